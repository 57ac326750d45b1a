#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wiener/kernel.hpp"

namespace wiener {

/// A named chain of kernels used by the iterated-transform identities.
struct NamedChain {
    std::string name;
    std::vector<KernelFn> kernels;
};

/// A built-in closed-form kernel family: a solution set of the system
/// h^2 = k1*k2, s1^2 = h^2 + k1^2, s2^2 = h^2 + k2^2, plus the kernel chains
/// the iterated identities run over.
struct Family {
    std::string name;
    std::string summary;               // defining formulas, for listings

    SystemSolutionSet set;

    /// Chains for the iterated-collapse checks (any nonzero kernels work).
    std::vector<NamedChain> collapse_chains;

    /// Chain H with s(H)^2 = k1*k2, used where an iterated transform feeds a
    /// convolution with kernels (k1, k2). Defaults to {h}.
    std::vector<KernelFn> product_chain;

    /// Chains K1, K2 with h^2 = s(K1)*s(K2), used where iterated transforms
    /// feed a convolution with kernels (s(K1), s(K2)). Default to {k1}, {k2}.
    std::vector<KernelFn> factor_chain1;
    std::vector<KernelFn> factor_chain2;

    /// Pool of support points for randomized functionals.
    std::vector<KernelFn> point_pool() const;
};

/// Registry order: poly, trig1, trig2, hyperbolic, sec-family, mixed-hyp-trig.
const std::vector<std::string>& family_names();

bool is_family_name(std::string_view name);

/// Samples the named family on `grid`. Throws RegistryError for unknown names.
Family make_family(std::string_view name, const Grid& grid);

} // namespace wiener
