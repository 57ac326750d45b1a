#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wiener/families.hpp"
#include "wiener/io.hpp"
#include "wiener/mc_oracle.hpp"
#include "wiener/report.hpp"
#include "wiener/transform.hpp"

namespace wiener {

/// Identity labels the suite knows how to run, in report order.
const std::vector<std::string>& known_identities();

struct Tolerances {
    double hypothesis = 1e-8;
    double measure = 1e-9;
    double pointwise = 1e-8;
    double merge = 1e-9;
    double drop = 1e-12;
};

struct SuiteConfig {
    double horizon = 1.0;
    int grid_n = 1024;
    int mc_grid_n = 256;
    std::vector<std::string> families;    // empty = full registry
    std::vector<std::string> identities;  // empty = all
    std::vector<double> q_values = {1.0, -1.0, 2.0, -2.0, 0.5, -0.5};
    std::vector<double> lambdas = {0.5, 1.0, 2.0};
    int n_paths = 32;
    int reps = 3;          // randomized functional draws per cell
    int mc_samples = 100000;
    std::uint64_t seed = 961748927;
    Tolerances tol;

    /// Fixed functionals (from definition files) used in place of the
    /// randomized draws when present.
    std::optional<CylinderFunctional> fixed_F;
    std::optional<CylinderFunctional> fixed_G;

    /// Kernels loaded from a definition file. Names of the form X.h, X.k1,
    /// X.k2 make X usable as a family, so user kernel sets (including broken
    /// ones, which get flagged per cell) can drive the identity suites.
    std::optional<KernelLibrary> kernels;

    Grid identity_grid() const { return Grid(horizon, grid_n); }
    Grid mc_grid() const { return Grid(horizon, mc_grid_n); }
    CanonicalizeOptions canonical_options() const { return {tol.merge, tol.drop}; }
    IdentityTolerances identity_tolerances() const {
        return {tol.hypothesis, tol.measure, tol.pointwise};
    }

    /// Throws std::invalid_argument for unknown identities/families or
    /// non-positive tolerances.
    void validate() const;
};

/// Draws a functional with 1..max_atoms atoms: weights uniform on the complex
/// unit disk, points drawn from `pool` and scaled by small signed rationals.
CylinderFunctional random_functional(SplitMix64& rng, std::span<const KernelFn> pool,
                                     int max_atoms, const CanonicalizeOptions& opts);

/// Brownian sample paths for pointwise identity checks.
std::vector<SamplePath> random_paths(const Grid& grid, std::uint64_t seed, int count);

/// Runs every enabled identity over families x q_values x reps.
VerificationReport run_suite(const SuiteConfig& cfg);

/// Monte Carlo comparisons against the closed-form Wiener integral plus the
/// combined-kernel variance checks.
VerificationReport mc_check(const SuiteConfig& cfg);

/// Table of registered families with formulas and system residuals. Unknown
/// names in `filter` simply produce no rows.
std::string list_families_text(const Grid& grid, const std::vector<std::string>& filter);
nlohmann::ordered_json list_families_json(const Grid& grid,
                                          const std::vector<std::string>& filter);

} // namespace wiener
