#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wiener/grid.hpp"

namespace wiener {

/// Kernels with L2 norm at or below this are rejected wherever a nonzero
/// Gaussian-process kernel is required.
inline constexpr double kZeroKernelTol = 1e-12;

/// An element of L2[0,T] sampled at the grid nodes. Doubles as a
/// Gaussian-process kernel and as a support point of a discrete measure.
/// `family_tag` is a closed-form descriptor used only in reports.
struct KernelFn {
    Grid grid;
    std::vector<double> values;
    std::string family_tag;

    KernelFn(Grid g, std::vector<double> v, std::string tag = {});

    /// Samples `fn` at every grid node.
    static KernelFn from_fn(const Grid& g, const std::function<double(double)>& fn,
                            std::string tag = {});
    static KernelFn constant(const Grid& g, double c, std::string tag = {});

    int node_count() const noexcept { return static_cast<int>(values.size()); }
};

namespace detail {

/// Composite Simpson over the grid; `f(i)` is the integrand at node i.
template <class F>
double simpson(const Grid& g, F&& f) {
    const int n = g.intervals();
    double ends = f(0) + f(n);
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(i);
    for (int i = 2; i < n; i += 2) even += f(i);
    return (g.spacing() / 3.0) * (ends + 4.0 * odd + 2.0 * even);
}

} // namespace detail

/// Simpson approximation of the L2 inner product over [0,T].
double l2_inner(const KernelFn& a, const KernelFn& b);
double l2_norm_sq(const KernelFn& a);
double l2_norm(const KernelFn& a);

/// || u*h ||_2^2 without materializing the pointwise product.
double l2_norm_sq_product(const KernelFn& u, const KernelFn& h);

/// L2 distance between two kernels on the same grid.
double l2_distance(const KernelFn& a, const KernelFn& b);

KernelFn pointwise_product(const KernelFn& a, const KernelFn& b);
KernelFn scaled(const KernelFn& a, double c);
KernelFn added(const KernelFn& a, const KernelFn& b);

double max_abs_value(const KernelFn& a);

bool is_zero_kernel(const KernelFn& a);
/// Throws ZeroKernelError mentioning `role` when ||a||_2 <= kZeroKernelTol.
void require_nonzero_kernel(const KernelFn& a, const std::string& role);

/// Canonical combiner: the pointwise nonnegative s with s^2 = sum_j h_j^2 at
/// every grid node. Any member of the equivalence class would do; only s^2
/// enters downstream formulas, so the nonnegative representative is fixed.
KernelFn s_combine(std::span<const KernelFn> hs);
KernelFn s_combine(std::initializer_list<KernelFn> hs);
KernelFn s_combine(const KernelFn& a, const KernelFn& b);

/// A candidate solution {h, k1, k2, s1, s2} of the system
///   (i) h^2 = k1*k2,  (ii) s1^2 = h^2 + k1^2,  (iii) s2^2 = h^2 + k2^2.
struct SystemSolutionSet {
    KernelFn h;
    KernelFn k1;
    KernelFn k2;
    KernelFn s1;
    KernelFn s2;
};

struct SystemReport {
    double residual_product;  // max_i |h^2 - k1*k2|
    double residual_s1;       // max_i |s1^2 - h^2 - k1^2|
    double residual_s2;       // max_i |s2^2 - h^2 - k2^2|
    double tolerance;
    bool pass;

    double max_residual() const noexcept;
};

/// Evaluates the three residuals at every node. A failing candidate is a
/// valid negative result, not an error.
SystemReport check_system(const SystemSolutionSet& candidate, double tol);

} // namespace wiener
