#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wiener/kernel.hpp"

namespace wiener {

using Complex = std::complex<double>;

/// A continuous path y in C0[0,T] as grid values with y(0) = 0.
struct SamplePath {
    Grid grid;
    std::vector<double> values;

    SamplePath(Grid g, std::vector<double> v);
};

/// One atom of a finite complex measure on L2[0,T].
struct Atom {
    Complex weight;
    KernelFn point;
};

/// A cylinder functional F(y) = sum_j c_j exp{i <u_j, y>}: a finite complex
/// measure with atoms (c_j, u_j). The empty list is the zero functional.
class CylinderFunctional {
public:
    explicit CylinderFunctional(Grid grid);
    CylinderFunctional(Grid grid, std::vector<Atom> atoms);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const Atom> atoms() const noexcept { return atoms_; }
    bool empty() const noexcept { return atoms_.empty(); }
    int atom_count() const noexcept { return static_cast<int>(atoms_.size()); }

private:
    Grid grid_;
    std::vector<Atom> atoms_;
};

struct CanonicalizeOptions {
    /// Atoms whose points are within merge_tol_rel * max(1, point norms) in
    /// L2 distance are merged (weights summed).
    double merge_tol_rel = 1e-9;
    /// Atoms with |weight| at or below this are dropped.
    double drop_tol = 1e-12;
};

/// Paley-Wiener-Zygmund integral <u, y> as a midpoint Stieltjes sum:
/// sum_i (u_i + u_{i+1})/2 * (y_{i+1} - y_i).
double pwz_integral(const KernelFn& u, const SamplePath& y);

/// F(y) = sum_j w_j exp{i <u_j, y>}.
Complex evaluate(const CylinderFunctional& F, const SamplePath& y);

/// The functional y -> F(rho * y); every support point is scaled by rho.
CylinderFunctional scale_argument(const CylinderFunctional& F, double rho);

/// Pointwise product of functionals: atoms {(c_j * d_l, u_j + v_l)}.
CylinderFunctional product(const CylinderFunctional& F, const CylinderFunctional& G);

/// Measure sum: concatenates atom lists (and canonicalizes).
CylinderFunctional sum(const CylinderFunctional& F, const CylinderFunctional& G);

/// Multiplies every weight by c.
CylinderFunctional scaled_weights(const CylinderFunctional& F, Complex c);

/// Merges nearby points, drops negligible weights. Idempotent.
CylinderFunctional canonicalize(const CylinderFunctional& F,
                                const CanonicalizeOptions& opts = {});

struct MeasureComparison {
    bool equal;
    double max_discrepancy;  // max over point distances, weight gaps, leftovers
    int unmatched;           // canonical atoms left unpaired above drop_tol
};

/// Canonicalizes both sides, pairs atoms greedily by nearest point (in atom
/// index order), and compares point distances and weight differences against
/// `tol`. Operational surrogate for equality of the underlying measures.
MeasureComparison measures_equal(const CylinderFunctional& F, const CylinderFunctional& G,
                                 double tol, const CanonicalizeOptions& opts = {});

} // namespace wiener
