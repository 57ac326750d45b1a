#include "wiener/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace wiener {

KernelFn::KernelFn(Grid g, std::vector<double> v, std::string tag)
    : grid(g), values(std::move(v)), family_tag(std::move(tag)) {
    if (static_cast<int>(values.size()) != grid.node_count()) {
        throw std::invalid_argument("KernelFn: value count does not match grid nodes");
    }
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("KernelFn: values must be finite");
        }
    }
}

KernelFn KernelFn::from_fn(const Grid& g, const std::function<double(double)>& fn,
                           std::string tag) {
    std::vector<double> v(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) v[i] = fn(g.node(i));
    return KernelFn(g, std::move(v), std::move(tag));
}

KernelFn KernelFn::constant(const Grid& g, double c, std::string tag) {
    return KernelFn(g, std::vector<double>(g.node_count(), c), std::move(tag));
}

double l2_inner(const KernelFn& a, const KernelFn& b) {
    require_same_grid(a.grid, b.grid, "l2_inner");
    return detail::simpson(a.grid, [&](int i) { return a.values[i] * b.values[i]; });
}

double l2_norm_sq(const KernelFn& a) {
    return detail::simpson(a.grid, [&](int i) { return a.values[i] * a.values[i]; });
}

double l2_norm(const KernelFn& a) { return std::sqrt(std::max(0.0, l2_norm_sq(a))); }

double l2_norm_sq_product(const KernelFn& u, const KernelFn& h) {
    require_same_grid(u.grid, h.grid, "l2_norm_sq_product");
    return detail::simpson(u.grid, [&](int i) {
        const double w = u.values[i] * h.values[i];
        return w * w;
    });
}

double l2_distance(const KernelFn& a, const KernelFn& b) {
    require_same_grid(a.grid, b.grid, "l2_distance");
    const double d2 = detail::simpson(a.grid, [&](int i) {
        const double d = a.values[i] - b.values[i];
        return d * d;
    });
    return std::sqrt(std::max(0.0, d2));
}

KernelFn pointwise_product(const KernelFn& a, const KernelFn& b) {
    require_same_grid(a.grid, b.grid, "pointwise_product");
    std::vector<double> v(a.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] * b.values[i];
    return KernelFn(a.grid, std::move(v));
}

KernelFn scaled(const KernelFn& a, double c) {
    std::vector<double> v(a.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.values[i];
    return KernelFn(a.grid, std::move(v), a.family_tag);
}

KernelFn added(const KernelFn& a, const KernelFn& b) {
    require_same_grid(a.grid, b.grid, "added");
    std::vector<double> v(a.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] + b.values[i];
    return KernelFn(a.grid, std::move(v));
}

double max_abs_value(const KernelFn& a) {
    double m = 0.0;
    for (double x : a.values) m = std::max(m, std::abs(x));
    return m;
}

bool is_zero_kernel(const KernelFn& a) { return l2_norm(a) <= kZeroKernelTol; }

void require_nonzero_kernel(const KernelFn& a, const std::string& role) {
    if (is_zero_kernel(a)) {
        throw ZeroKernelError(role + ": kernel must be nonzero in L2[0,T]");
    }
}

KernelFn s_combine(std::span<const KernelFn> hs) {
    if (hs.empty()) {
        throw std::invalid_argument("s_combine: empty kernel list");
    }
    const Grid& g = hs.front().grid;
    for (const KernelFn& h : hs) {
        require_same_grid(g, h.grid, "s_combine");
        require_nonzero_kernel(h, "s_combine");
    }
    std::vector<double> v(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) {
        double sum_sq = 0.0;
        for (const KernelFn& h : hs) sum_sq += h.values[i] * h.values[i];
        v[i] = std::sqrt(sum_sq);
    }
    return KernelFn(g, std::move(v));
}

KernelFn s_combine(std::initializer_list<KernelFn> hs) {
    return s_combine(std::span<const KernelFn>(hs.begin(), hs.size()));
}

KernelFn s_combine(const KernelFn& a, const KernelFn& b) { return s_combine({a, b}); }

double SystemReport::max_residual() const noexcept {
    return std::max({residual_product, residual_s1, residual_s2});
}

SystemReport check_system(const SystemSolutionSet& c, double tol) {
    require_same_grid(c.h.grid, c.k1.grid, "check_system");
    require_same_grid(c.h.grid, c.k2.grid, "check_system");
    require_same_grid(c.h.grid, c.s1.grid, "check_system");
    require_same_grid(c.h.grid, c.s2.grid, "check_system");

    double r_prod = 0.0, r_s1 = 0.0, r_s2 = 0.0;
    for (int i = 0; i < c.h.grid.node_count(); ++i) {
        const double h2 = c.h.values[i] * c.h.values[i];
        const double k1 = c.k1.values[i], k2 = c.k2.values[i];
        const double s1 = c.s1.values[i], s2 = c.s2.values[i];
        r_prod = std::max(r_prod, std::abs(h2 - k1 * k2));
        r_s1 = std::max(r_s1, std::abs(s1 * s1 - h2 - k1 * k1));
        r_s2 = std::max(r_s2, std::abs(s2 * s2 - h2 - k2 * k2));
    }
    SystemReport rep{r_prod, r_s1, r_s2, tol, false};
    rep.pass = rep.max_residual() <= tol;
    return rep;
}

} // namespace wiener
