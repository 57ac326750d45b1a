#include "wiener/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wiener {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_nonzero_q(double q, const char* what) {
    if (q == 0.0 || !std::isfinite(q)) {
        throw std::invalid_argument(std::string(what) + ": q must be a nonzero real");
    }
}

void require_same_sign(double q, double other, const char* what) {
    if (std::signbit(q) != std::signbit(other)) {
        throw SignConditionError(std::string(what) + ": parameters must share one sign");
    }
}

/// Unit-modulus kernel factor exp{-i * norm_sq / (2q)}.
Complex transform_phase(double q, double norm_sq) {
    return std::polar(1.0, -norm_sq / (2.0 * q));
}

CylinderFunctional half_argument_product(const CylinderFunctional& F,
                                         const CylinderFunctional& G) {
    return product(scale_argument(F, kInvSqrt2), scale_argument(G, kInvSqrt2));
}

double pointwise_gap(std::span<const CylinderFunctional> exprs,
                     std::span<const SamplePath> paths) {
    double worst = 0.0;
    for (const SamplePath& y : paths) {
        double mag = 1.0;
        bool first = true;
        Complex ref;
        for (const CylinderFunctional& e : exprs) {
            const Complex v = evaluate(e, y);
            mag = std::max(mag, std::abs(v));
            if (first) {
                ref = v;
                first = false;
            } else {
                worst = std::max(worst, std::abs(v - ref) / mag);
            }
        }
    }
    return worst;
}

/// Pairwise comparison of equivalent expressions, as measures and pointwise.
IdentityCheck compare_expressions(std::span<const CylinderFunctional> exprs,
                                  std::span<const SamplePath> paths,
                                  const IdentityTolerances& tol, double hyp_residual) {
    IdentityCheck out{true, 0.0, 0.0, hyp_residual};
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        for (std::size_t j = i + 1; j < exprs.size(); ++j) {
            const MeasureComparison cmp = measures_equal(exprs[i], exprs[j], tol.measure);
            out.measure_discrepancy = std::max(out.measure_discrepancy, cmp.max_discrepancy);
            if (!cmp.equal) out.pass = false;
        }
    }
    out.pointwise_discrepancy = pointwise_gap(exprs, paths);
    if (out.pointwise_discrepancy > tol.pointwise) out.pass = false;
    return out;
}

void require_product_hypothesis(const KernelFn& h, const KernelFn& k1, const KernelFn& k2,
                                double tol, double& residual_out) {
    residual_out = product_hypothesis_residual(h, k1, k2);
    if (residual_out > tol) {
        throw HypothesisError("hypothesis h^2 = k1*k2 violated: relative residual " +
                              std::to_string(residual_out));
    }
}

} // namespace

TransformSpec::TransformSpec(double q_, KernelFn h_) : q(q_), h(std::move(h_)) {
    require_nonzero_q(q, "TransformSpec");
    require_nonzero_kernel(h, "TransformSpec");
}

ConvolutionSpec::ConvolutionSpec(double q_, KernelFn k1_, KernelFn k2_)
    : q(q_), k1(std::move(k1_)), k2(std::move(k2_)) {
    require_nonzero_q(q, "ConvolutionSpec");
    require_nonzero_kernel(k1, "ConvolutionSpec");
    require_nonzero_kernel(k2, "ConvolutionSpec");
    require_same_grid(k1.grid, k2.grid, "ConvolutionSpec");
}

MixedChainSpec::MixedChainSpec(std::vector<TransformSpec> specs) : specs_(std::move(specs)) {
    if (specs_.empty()) {
        throw std::invalid_argument("MixedChainSpec: empty transform chain");
    }
    double inv_sum = 0.0;
    for (const TransformSpec& s : specs_) {
        require_same_sign(specs_.front().q, s.q, "MixedChainSpec");
        inv_sum += 1.0 / s.q;
    }
    alpha_ = 1.0 / inv_sum;
    taus_.reserve(specs_.size());
    for (const TransformSpec& s : specs_) {
        const double radicand = alpha_ / s.q;
        if (!(radicand > 0.0)) {
            throw SignConditionError("MixedChainSpec: tau radicand must be positive");
        }
        taus_.push_back(std::sqrt(radicand));
    }
}

CylinderFunctional gfft(const CylinderFunctional& F, const TransformSpec& spec) {
    require_same_grid(F.grid(), spec.h.grid, "gfft");
    std::vector<Atom> atoms(F.atoms().begin(), F.atoms().end());
    for (Atom& a : atoms) {
        a.weight *= transform_phase(spec.q, l2_norm_sq_product(a.point, spec.h));
    }
    return CylinderFunctional(F.grid(), std::move(atoms));
}

bool gfft_inverse_check(const CylinderFunctional& F, const TransformSpec& spec, double tol) {
    const CylinderFunctional round_trip = gfft(gfft(F, spec), TransformSpec(-spec.q, spec.h));
    return measures_equal(round_trip, F, tol).equal;
}

CylinderFunctional gcp(const CylinderFunctional& F, const CylinderFunctional& G,
                       const ConvolutionSpec& spec) {
    require_same_grid(F.grid(), G.grid(), "gcp");
    require_same_grid(F.grid(), spec.k1.grid, "gcp");
    std::vector<Atom> atoms;
    atoms.reserve(F.atoms().size() * G.atoms().size());
    for (const Atom& a : F.atoms()) {
        for (const Atom& b : G.atoms()) {
            // pair phase exp{-(i/4q) ||u k1 - v k2||^2}, push-forward (u+v)/sqrt2
            const double cross = detail::simpson(F.grid(), [&](int i) {
                const double d = a.point.values[i] * spec.k1.values[i] -
                                 b.point.values[i] * spec.k2.values[i];
                return d * d;
            });
            const Complex w =
                a.weight * b.weight * std::polar(1.0, -cross / (4.0 * spec.q));
            atoms.push_back({w, scaled(added(a.point, b.point), kInvSqrt2)});
        }
    }
    return canonicalize(CylinderFunctional(F.grid(), std::move(atoms)));
}

CylinderFunctional iterated_gfft(const CylinderFunctional& F,
                                 std::span<const TransformSpec> specs) {
    if (specs.empty()) {
        throw std::invalid_argument("iterated_gfft: empty transform chain");
    }
    CylinderFunctional out = F;
    for (const TransformSpec& s : specs) out = gfft(out, s);
    return out;
}

EqualityReport collapse_equal_q(const CylinderFunctional& F, double q,
                                std::span<const KernelFn> hs, double tol) {
    require_nonzero_q(q, "collapse_equal_q");
    std::vector<TransformSpec> specs;
    specs.reserve(hs.size());
    for (const KernelFn& h : hs) specs.emplace_back(q, h);
    const CylinderFunctional iterated = iterated_gfft(F, specs);
    const CylinderFunctional collapsed = gfft(F, TransformSpec(q, s_combine(hs)));
    const MeasureComparison cmp = measures_equal(iterated, collapsed, tol);
    return {cmp.equal, cmp.max_discrepancy};
}

EqualityReport collapse_mixed_q(const CylinderFunctional& F, const MixedChainSpec& chain,
                                double tol) {
    const CylinderFunctional iterated = iterated_gfft(F, chain.specs());
    std::vector<KernelFn> scaled_kernels;
    scaled_kernels.reserve(chain.specs().size());
    for (std::size_t j = 0; j < chain.specs().size(); ++j) {
        scaled_kernels.push_back(scaled(chain.specs()[j].h, chain.taus()[j]));
    }
    const CylinderFunctional collapsed =
        gfft(F, TransformSpec(chain.alpha(), s_combine(scaled_kernels)));
    const MeasureComparison cmp = measures_equal(iterated, collapsed, tol);
    return {cmp.equal, cmp.max_discrepancy};
}

EqualityReport rescale_parameter_check(const CylinderFunctional& F, double q,
                                       const KernelFn& h, double beta, double tol) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("rescale_parameter_check: beta must be positive");
    }
    const CylinderFunctional lhs = gfft(F, TransformSpec(beta * q, h));
    const CylinderFunctional rhs = gfft(F, TransformSpec(q, scaled(h, 1.0 / std::sqrt(beta))));
    const MeasureComparison cmp = measures_equal(lhs, rhs, tol);
    return {cmp.equal, cmp.max_discrepancy};
}

double product_hypothesis_residual(const KernelFn& h, const KernelFn& k1, const KernelFn& k2) {
    require_same_grid(h.grid, k1.grid, "product_hypothesis_residual");
    require_same_grid(h.grid, k2.grid, "product_hypothesis_residual");
    double residual = 0.0, scale = 1.0;
    for (int i = 0; i < h.grid.node_count(); ++i) {
        const double h2 = h.values[i] * h.values[i];
        const double kk = k1.values[i] * k2.values[i];
        residual = std::max(residual, std::abs(h2 - kk));
        scale = std::max({scale, std::abs(h2), std::abs(kk)});
    }
    return residual / scale;
}

IdentityCheck verify_transform_of_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const KernelFn& k1, const KernelFn& k2, double q, std::span<const SamplePath> paths,
    const IdentityTolerances& tol) {
    double residual = 0.0;
    require_product_hypothesis(h, k1, k2, tol.hypothesis, residual);

    const CylinderFunctional lhs = gfft(gcp(F, G, ConvolutionSpec(q, k1, k2)),
                                        TransformSpec(q, h));
    const CylinderFunctional rhs = product(
        scale_argument(gfft(F, TransformSpec(q, scaled(s_combine(h, k1), kInvSqrt2))),
                       kInvSqrt2),
        scale_argument(gfft(G, TransformSpec(q, scaled(s_combine(h, k2), kInvSqrt2))),
                       kInvSqrt2));

    const CylinderFunctional exprs[] = {lhs, rhs};
    return compare_expressions(exprs, paths, tol, residual);
}

IdentityCheck verify_convolution_of_transforms(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const KernelFn& k1, const KernelFn& k2, double q, std::span<const SamplePath> paths,
    const IdentityTolerances& tol) {
    double residual = 0.0;
    require_product_hypothesis(h, k1, k2, tol.hypothesis, residual);

    const CylinderFunctional lhs =
        gcp(gfft(F, TransformSpec(q, scaled(s_combine(h, k1), kInvSqrt2))),
            gfft(G, TransformSpec(q, scaled(s_combine(h, k2), kInvSqrt2))),
            ConvolutionSpec(-q, k1, k2));
    const CylinderFunctional rhs = gfft(half_argument_product(F, G), TransformSpec(q, h));

    const CylinderFunctional exprs[] = {lhs, rhs};
    return compare_expressions(exprs, paths, tol, residual);
}

IdentityCheck verify_iterated_transform_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G,
    std::span<const KernelFn> hchain, const KernelFn& k1, const KernelFn& k2, double q,
    std::span<const SamplePath> paths, const IdentityTolerances& tol) {
    const KernelFn s_chain = s_combine(hchain);
    double residual = 0.0;
    require_product_hypothesis(s_chain, k1, k2, tol.hypothesis, residual);

    // E1: chain of h_j/sqrt2 transforms closed by k_j/sqrt2, then convolved.
    auto chained = [&](const CylinderFunctional& X, const KernelFn& k) {
        std::vector<TransformSpec> specs;
        for (const KernelFn& hj : hchain) specs.emplace_back(q, scaled(hj, kInvSqrt2));
        specs.emplace_back(q, scaled(k, kInvSqrt2));
        return iterated_gfft(X, specs);
    };
    const ConvolutionSpec conv(-q, k1, k2);
    const CylinderFunctional e1 = gcp(chained(F, k1), chained(G, k2), conv);
    // E2: single transforms with the combined kernels s(H,k_j)/sqrt2.
    const CylinderFunctional e2 =
        gcp(gfft(F, TransformSpec(q, scaled(s_combine(s_chain, k1), kInvSqrt2))),
            gfft(G, TransformSpec(q, scaled(s_combine(s_chain, k2), kInvSqrt2))), conv);
    // E3: the transform of the half-argument product with kernel s(H).
    const CylinderFunctional e3 =
        gfft(half_argument_product(F, G), TransformSpec(q, s_chain));

    const CylinderFunctional exprs[] = {e1, e2, e3};
    return compare_expressions(exprs, paths, tol, residual);
}

IdentityCheck verify_factor_chain_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    std::span<const KernelFn> kchain1, std::span<const KernelFn> kchain2, double q,
    std::span<const SamplePath> paths, const IdentityTolerances& tol) {
    const KernelFn s1 = s_combine(kchain1);
    const KernelFn s2 = s_combine(kchain2);
    double residual = 0.0;
    require_product_hypothesis(h, s1, s2, tol.hypothesis, residual);

    auto chained = [&](const CylinderFunctional& X, std::span<const KernelFn> chain) {
        std::vector<TransformSpec> specs;
        for (const KernelFn& kj : chain) specs.emplace_back(q, scaled(kj, kInvSqrt2));
        specs.emplace_back(q, scaled(h, kInvSqrt2));
        return iterated_gfft(X, specs);
    };
    const ConvolutionSpec conv(-q, s1, s2);
    const CylinderFunctional e1 = gcp(chained(F, kchain1), chained(G, kchain2), conv);
    const CylinderFunctional e2 =
        gcp(gfft(gfft(F, TransformSpec(q, scaled(s1, kInvSqrt2))),
                 TransformSpec(q, scaled(h, kInvSqrt2))),
            gfft(gfft(G, TransformSpec(q, scaled(s2, kInvSqrt2))),
                 TransformSpec(q, scaled(h, kInvSqrt2))),
            conv);
    const CylinderFunctional e3 =
        gcp(gfft(F, TransformSpec(q, scaled(s_combine(h, s1), kInvSqrt2))),
            gfft(G, TransformSpec(q, scaled(s_combine(h, s2), kInvSqrt2))), conv);
    const CylinderFunctional e4 = gfft(half_argument_product(F, G), TransformSpec(q, h));

    const CylinderFunctional exprs[] = {e1, e2, e3, e4};
    return compare_expressions(exprs, paths, tol, residual);
}

IdentityCheck verify_lemma_mixed_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const KernelFn& k1, const KernelFn& k2, double q, double q1, double q2,
    std::span<const SamplePath> paths, const IdentityTolerances& tol) {
    require_nonzero_q(q, "verify_lemma_mixed_convolution");
    require_nonzero_q(q1, "verify_lemma_mixed_convolution");
    require_nonzero_q(q2, "verify_lemma_mixed_convolution");
    require_same_sign(q, q1, "verify_lemma_mixed_convolution");
    require_same_sign(q, q2, "verify_lemma_mixed_convolution");
    double residual = 0.0;
    require_product_hypothesis(h, k1, k2, tol.hypothesis, residual);

    const CylinderFunctional lhs =
        gcp(gfft(F, TransformSpec(q1, scaled(s_combine(h, k1), std::sqrt(q1 / (2.0 * q))))),
            gfft(G, TransformSpec(q2, scaled(s_combine(h, k2), std::sqrt(q2 / (2.0 * q))))),
            ConvolutionSpec(-q, k1, k2));
    const CylinderFunctional rhs = gfft(half_argument_product(F, G), TransformSpec(q, h));

    const CylinderFunctional exprs[] = {lhs, rhs};
    return compare_expressions(exprs, paths, tol, residual);
}

double GrandChainSide::alpha() const {
    double inv = 0.0;
    for (double qj : qs) inv += 1.0 / qj;
    return 1.0 / inv;
}

double GrandChainSide::beta() const {
    double inv = 1.0 / q_tail;
    for (double qj : qs) inv += 1.0 / qj;
    return 1.0 / inv;
}

std::vector<double> GrandChainSide::taus() const {
    const double a = alpha();
    std::vector<double> out;
    out.reserve(qs.size());
    for (double qj : qs) out.push_back(std::sqrt(a / qj));
    return out;
}

IdentityCheck verify_grand_identity(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const GrandChainSide& side1, const GrandChainSide& side2, double q,
    std::span<const SamplePath> paths, const IdentityTolerances& tol) {
    require_nonzero_q(q, "verify_grand_identity");
    for (const GrandChainSide* side : {&side1, &side2}) {
        if (side->kernels.empty() || side->kernels.size() != side->qs.size()) {
            throw std::invalid_argument(
                "verify_grand_identity: chain kernels and q-list must align");
        }
        require_nonzero_q(side->q_tail, "verify_grand_identity");
        require_same_sign(q, side->q_tail, "verify_grand_identity");
        for (double qj : side->qs) {
            require_nonzero_q(qj, "verify_grand_identity");
            require_same_sign(q, qj, "verify_grand_identity");
        }
    }

    auto tau_combined = [](const GrandChainSide& side) {
        const std::vector<double> ts = side.taus();
        std::vector<KernelFn> scaled_kernels;
        scaled_kernels.reserve(ts.size());
        for (std::size_t j = 0; j < ts.size(); ++j) {
            scaled_kernels.push_back(scaled(side.kernels[j], ts[j]));
        }
        return s_combine(scaled_kernels);
    };
    const KernelFn s_tau1 = tau_combined(side1);
    const KernelFn s_tau2 = tau_combined(side2);
    double residual = 0.0;
    require_product_hypothesis(h, s_tau1, s_tau2, tol.hypothesis, residual);

    const ConvolutionSpec conv(-q, s_tau1, s_tau2);
    const double two_q = 2.0 * q;

    // E1: full inner chains with kernels sqrt(alpha/2q) h_j, closed by the
    // trailing sqrt(q_tail/2q) h transform.
    auto full_chain = [&](const CylinderFunctional& X, const GrandChainSide& side) {
        const double a = side.alpha();
        std::vector<TransformSpec> specs;
        for (std::size_t j = 0; j < side.kernels.size(); ++j) {
            specs.emplace_back(side.qs[j], scaled(side.kernels[j], std::sqrt(a / two_q)));
        }
        specs.emplace_back(side.q_tail, scaled(h, std::sqrt(side.q_tail / two_q)));
        return iterated_gfft(X, specs);
    };
    const CylinderFunctional e1 = gcp(full_chain(F, side1), full_chain(G, side2), conv);

    // E2: inner chains collapsed to their alpha transforms.
    auto alpha_chain = [&](const CylinderFunctional& X, const GrandChainSide& side,
                           const KernelFn& s_tau) {
        const double a = side.alpha();
        const CylinderFunctional inner =
            gfft(X, TransformSpec(a, scaled(s_tau, std::sqrt(a / two_q))));
        return gfft(inner,
                    TransformSpec(side.q_tail, scaled(h, std::sqrt(side.q_tail / two_q))));
    };
    const CylinderFunctional e2 =
        gcp(alpha_chain(F, side1, s_tau1), alpha_chain(G, side2, s_tau2), conv);

    // E3: whole sides collapsed to their beta transforms.
    auto beta_side = [&](const CylinderFunctional& X, const GrandChainSide& side,
                         const KernelFn& s_tau) {
        const double b = side.beta();
        return gfft(X, TransformSpec(b, scaled(s_combine(h, s_tau), std::sqrt(b / two_q))));
    };
    const CylinderFunctional e3 =
        gcp(beta_side(F, side1, s_tau1), beta_side(G, side2, s_tau2), conv);

    // E4: the direct transform of the half-argument product.
    const CylinderFunctional e4 = gfft(half_argument_product(F, G), TransformSpec(q, h));

    const CylinderFunctional exprs[] = {e1, e2, e3, e4};
    return compare_expressions(exprs, paths, tol, residual);
}

} // namespace wiener
