#include "wiener/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wiener {

SamplePath::SamplePath(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.node_count()) {
        throw std::invalid_argument("SamplePath: value count does not match grid nodes");
    }
    if (values.front() != 0.0) {
        throw std::invalid_argument("SamplePath: paths start at 0");
    }
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("SamplePath: values must be finite");
        }
    }
}

CylinderFunctional::CylinderFunctional(Grid grid) : grid_(grid) {}

CylinderFunctional::CylinderFunctional(Grid grid, std::vector<Atom> atoms)
    : grid_(grid), atoms_(std::move(atoms)) {
    for (const Atom& a : atoms_) {
        require_same_grid(grid_, a.point.grid, "CylinderFunctional");
    }
}

double pwz_integral(const KernelFn& u, const SamplePath& y) {
    require_same_grid(u.grid, y.grid, "pwz_integral");
    double acc = 0.0;
    for (int i = 0; i < u.grid.intervals(); ++i) {
        const double mid = 0.5 * (u.values[i] + u.values[i + 1]);
        acc += mid * (y.values[i + 1] - y.values[i]);
    }
    return acc;
}

Complex evaluate(const CylinderFunctional& F, const SamplePath& y) {
    require_same_grid(F.grid(), y.grid, "evaluate");
    Complex acc = 0.0;
    for (const Atom& a : F.atoms()) {
        acc += a.weight * std::polar(1.0, pwz_integral(a.point, y));
    }
    return acc;
}

CylinderFunctional scale_argument(const CylinderFunctional& F, double rho) {
    if (rho == 0.0 || !std::isfinite(rho)) {
        throw std::invalid_argument("scale_argument: scale must be a nonzero real");
    }
    std::vector<Atom> atoms;
    atoms.reserve(F.atoms().size());
    for (const Atom& a : F.atoms()) atoms.push_back({a.weight, scaled(a.point, rho)});
    return CylinderFunctional(F.grid(), std::move(atoms));
}

CylinderFunctional product(const CylinderFunctional& F, const CylinderFunctional& G) {
    require_same_grid(F.grid(), G.grid(), "product");
    std::vector<Atom> atoms;
    atoms.reserve(F.atoms().size() * G.atoms().size());
    for (const Atom& a : F.atoms()) {
        for (const Atom& b : G.atoms()) {
            atoms.push_back({a.weight * b.weight, added(a.point, b.point)});
        }
    }
    return canonicalize(CylinderFunctional(F.grid(), std::move(atoms)));
}

CylinderFunctional sum(const CylinderFunctional& F, const CylinderFunctional& G) {
    require_same_grid(F.grid(), G.grid(), "sum");
    std::vector<Atom> atoms(F.atoms().begin(), F.atoms().end());
    atoms.insert(atoms.end(), G.atoms().begin(), G.atoms().end());
    return canonicalize(CylinderFunctional(F.grid(), std::move(atoms)));
}

CylinderFunctional scaled_weights(const CylinderFunctional& F, Complex c) {
    std::vector<Atom> atoms(F.atoms().begin(), F.atoms().end());
    for (Atom& a : atoms) a.weight *= c;
    return CylinderFunctional(F.grid(), std::move(atoms));
}

namespace {

double merge_tolerance(const CylinderFunctional& F, const CanonicalizeOptions& opts) {
    double scale = 1.0;
    for (const Atom& a : F.atoms()) scale = std::max(scale, l2_norm(a.point));
    return opts.merge_tol_rel * scale;
}

} // namespace

CylinderFunctional canonicalize(const CylinderFunctional& F, const CanonicalizeOptions& opts) {
    const double merge_tol = merge_tolerance(F, opts);
    std::vector<Atom> merged;
    for (const Atom& a : F.atoms()) {
        bool joined = false;
        for (Atom& rep : merged) {
            if (l2_distance(rep.point, a.point) <= merge_tol) {
                rep.weight += a.weight;
                joined = true;
                break;
            }
        }
        if (!joined) merged.push_back(a);
    }
    std::vector<Atom> kept;
    kept.reserve(merged.size());
    for (Atom& a : merged) {
        if (std::abs(a.weight) > opts.drop_tol) kept.push_back(std::move(a));
    }
    return CylinderFunctional(F.grid(), std::move(kept));
}

MeasureComparison measures_equal(const CylinderFunctional& F, const CylinderFunctional& G,
                                 double tol, const CanonicalizeOptions& opts) {
    require_same_grid(F.grid(), G.grid(), "measures_equal");
    const CylinderFunctional cf = canonicalize(F, opts);
    const CylinderFunctional cg = canonicalize(G, opts);

    std::vector<bool> used(cg.atoms().size(), false);
    MeasureComparison out{true, 0.0, 0};

    for (const Atom& a : cf.atoms()) {
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < cg.atoms().size(); ++j) {
            if (used[j]) continue;
            const double d = l2_distance(a.point, cg.atoms()[j].point);
            if (d < best_dist) {
                best_dist = d;
                best = static_cast<int>(j);
            }
        }
        if (best < 0) {
            // leftover atom in F with no partner
            out.max_discrepancy = std::max(out.max_discrepancy, std::abs(a.weight));
            if (std::abs(a.weight) > opts.drop_tol) {
                out.equal = false;
                ++out.unmatched;
            }
            continue;
        }
        used[best] = true;
        const double weight_gap = std::abs(a.weight - cg.atoms()[best].weight);
        out.max_discrepancy = std::max({out.max_discrepancy, best_dist, weight_gap});
        if (best_dist > tol || weight_gap > tol) out.equal = false;
    }
    for (std::size_t j = 0; j < cg.atoms().size(); ++j) {
        if (used[j]) continue;
        const double w = std::abs(cg.atoms()[j].weight);
        out.max_discrepancy = std::max(out.max_discrepancy, w);
        if (w > opts.drop_tol) {
            out.equal = false;
            ++out.unmatched;
        }
    }
    return out;
}

} // namespace wiener
