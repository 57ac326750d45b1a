#pragma once

#include <span>
#include <vector>

#include "wiener/functional.hpp"

namespace wiener {

/// Parameters of one generalized Fourier-Feynman transform T_{q,h}.
/// The transform multiplies each atom weight by exp{-(i/2q) ||u*h||_2^2}.
struct TransformSpec {
    double q;
    KernelFn h;

    TransformSpec(double q_, KernelFn h_);
};

/// Parameters of one generalized convolution product (F*G)_q^{(k1,k2)}.
/// Pass a negative q for the (.)_{-q} convolution; the kernel formula is a
/// single expression in q.
struct ConvolutionSpec {
    double q;
    KernelFn k1;
    KernelFn k2;

    ConvolutionSpec(double q_, KernelFn k1_, KernelFn k2_);
};

/// An ordered chain of transforms whose parameters all share one sign, with
/// the recombination constants alpha = 1/sum(1/q_j), tau_j = sqrt(alpha/q_j).
class MixedChainSpec {
public:
    explicit MixedChainSpec(std::vector<TransformSpec> specs);

    std::span<const TransformSpec> specs() const noexcept { return specs_; }
    double alpha() const noexcept { return alpha_; }
    const std::vector<double>& taus() const noexcept { return taus_; }

private:
    std::vector<TransformSpec> specs_;
    double alpha_;
    std::vector<double> taus_;
};

CylinderFunctional gfft(const CylinderFunctional& F, const TransformSpec& spec);

/// Checks the inverse-transform round trip T_{-q,h}(T_{q,h}(F)) = F.
bool gfft_inverse_check(const CylinderFunctional& F, const TransformSpec& spec, double tol);

CylinderFunctional gcp(const CylinderFunctional& F, const CylinderFunctional& G,
                       const ConvolutionSpec& spec);

/// Left fold of gfft over the specs, first spec applied first.
CylinderFunctional iterated_gfft(const CylinderFunctional& F,
                                 std::span<const TransformSpec> specs);

struct EqualityReport {
    bool equal;
    double max_discrepancy;
};

/// Iterated transform with one q collapses to a single transform with the
/// combined kernel s(h_1,...,h_n).
EqualityReport collapse_equal_q(const CylinderFunctional& F, double q,
                                std::span<const KernelFn> hs, double tol);

/// Iterated transform with mixed parameters of one sign collapses to the
/// single transform T_{alpha, s(tau_1 h_1, ..., tau_n h_n)}.
EqualityReport collapse_mixed_q(const CylinderFunctional& F, const MixedChainSpec& chain,
                                double tol);

/// T_{beta*q, h} = T_{q, h/sqrt(beta)} for beta > 0.
EqualityReport rescale_parameter_check(const CylinderFunctional& F, double q,
                                       const KernelFn& h, double beta, double tol);

struct IdentityTolerances {
    double hypothesis = 1e-8;   // relative residual allowed in h^2 = k1*k2 etc.
    double measure = 1e-9;      // measures_equal tolerance
    double pointwise = 1e-8;    // relative gap at sample paths
};

/// Outcome of one identity check: the expressions on each side compared both
/// as canonical measures and pointwise at the supplied sample paths.
struct IdentityCheck {
    bool pass;
    double measure_discrepancy;
    double pointwise_discrepancy;
    double hypothesis_residual;  // relative residual of the checked hypothesis
};

/// Relative residual of h^2 = k1*k2 at the grid nodes.
double product_hypothesis_residual(const KernelFn& h, const KernelFn& k1, const KernelFn& k2);

/// Transform of a convolution factors into a product of transforms:
///   T_{q,h}((F*G)_q^{(k1,k2)})(y)
///     = T_{q,s(h,k1)/sqrt2}(F)(y/sqrt2) * T_{q,s(h,k2)/sqrt2}(G)(y/sqrt2)
/// under the hypothesis h^2 = k1*k2.
IdentityCheck verify_transform_of_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const KernelFn& k1, const KernelFn& k2, double q, std::span<const SamplePath> paths,
    const IdentityTolerances& tol = {});

/// Convolution of transforms equals the transform of the product:
///   (T_{q,s(h,k1)/sqrt2}(F) * T_{q,s(h,k2)/sqrt2}(G))_{-q}^{(k1,k2)}(y)
///     = T_{q,h}(F(./sqrt2) G(./sqrt2))(y)
/// under the hypothesis h^2 = k1*k2.
IdentityCheck verify_convolution_of_transforms(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const KernelFn& k1, const KernelFn& k2, double q, std::span<const SamplePath> paths,
    const IdentityTolerances& tol = {});

/// Iterated transforms over hchain, closed by k1/k2 transforms, feeding the
/// (.)_{-q}^{(k1,k2)} convolution; all three equivalent expressions are
/// compared pairwise. Hypothesis: s(hchain)^2 = k1*k2.
IdentityCheck verify_iterated_transform_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G,
    std::span<const KernelFn> hchain, const KernelFn& k1, const KernelFn& k2, double q,
    std::span<const SamplePath> paths, const IdentityTolerances& tol = {});

/// Iterated transforms over the factor chains kchain1/kchain2, closed by an
/// h transform, feeding the (.)_{-q}^{(s(K1),s(K2))} convolution; all four
/// equivalent expressions are compared pairwise.
/// Hypothesis: h^2 = s(kchain1)*s(kchain2).
IdentityCheck verify_factor_chain_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    std::span<const KernelFn> kchain1, std::span<const KernelFn> kchain2, double q,
    std::span<const SamplePath> paths, const IdentityTolerances& tol = {});

/// Mixed-parameter convolution of transforms:
///   (T_{q1,sqrt(q1/2q) s(h,k1)}(F) * T_{q2,sqrt(q2/2q) s(h,k2)}(G))_{-q}^{(k1,k2)}(y)
///     = T_{q,h}(F(./sqrt2) G(./sqrt2))(y)
/// for sgn(q) = sgn(q1) = sgn(q2) and h^2 = k1*k2.
IdentityCheck verify_lemma_mixed_convolution(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const KernelFn& k1, const KernelFn& k2, double q, double q1, double q2,
    std::span<const SamplePath> paths, const IdentityTolerances& tol = {});

/// One side of the grand mixed-parameter identity: an inner chain of
/// (q_j, h_j) transforms extended by a trailing (q_tail, h) transform.
struct GrandChainSide {
    std::vector<KernelFn> kernels;
    std::vector<double> qs;
    double q_tail;

    double alpha() const;  // 1 / sum(1/q_j) over the inner chain
    double beta() const;   // 1 / (1/q_tail + sum(1/q_j))
    std::vector<double> taus() const;
};

/// The grand identity: with all parameters of one sign and
/// h^2 = s(tau_1 H1) * s(tau_2 H2), the four expressions
///   E1 = (chain(F) * chain(G))_{-q}^{(s(tau H1), s(tau H2))}
///   E2 = same with each inner chain collapsed to its alpha transform
///   E3 = same with each side collapsed to its beta transform
///   E4 = T_{q,h}(F(./sqrt2) G(./sqrt2))
/// agree pairwise, as measures and pointwise.
IdentityCheck verify_grand_identity(
    const CylinderFunctional& F, const CylinderFunctional& G, const KernelFn& h,
    const GrandChainSide& side1, const GrandChainSide& side2, double q,
    std::span<const SamplePath> paths, const IdentityTolerances& tol = {});

} // namespace wiener
