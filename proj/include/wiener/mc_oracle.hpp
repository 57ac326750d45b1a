#pragma once

#include <cstdint>
#include <vector>

#include "wiener/functional.hpp"

namespace wiener {

/// splitmix64 finalizer (Steele, Lea, Flood). Used both as a stream seeder
/// and as the per-stream generator, so every draw is a pure function of
/// (seed, stream index, position).
std::uint64_t mix64(std::uint64_t z);

/// Tiny splittable generator: one splitmix64 stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double next_unit();       // uniform in (0, 1]
    double next_gaussian();   // Box-Muller on next_unit pairs
    int next_below(int n);    // uniform in [0, n)

private:
    std::uint64_t state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

/// Independent stream for one sample-path index. Paths are reproducible per
/// (seed, index) regardless of evaluation order.
SplitMix64 path_stream(std::uint64_t seed, std::uint64_t index);

/// Derives a cell seed from the config seed and a label, so randomized cells
/// are independent of enumeration order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

struct McConfig {
    Grid grid;
    int n_samples;
    std::uint64_t seed;
    std::vector<double> lambdas;  // positive reals

    McConfig(Grid g, int n, std::uint64_t s, std::vector<double> ls = {0.5, 1.0, 2.0});
};

struct McEstimate {
    Complex mean;
    double std_error;   // batch-means standard error; +inf for n < 2
    int n_samples;
};

/// Brownian path on the grid: independent N(0, dt) increments, y(0) = 0,
/// deterministic in (seed, index).
SamplePath sample_brownian(const Grid& grid, std::uint64_t seed, std::uint64_t index);

/// Monte Carlo estimate of the generalized Wiener integral at real lambda:
/// the sample mean of sum_j c_j exp{i lambda^{-1/2} <u_j h, x>} over Brownian
/// paths x, with the PWZ integral discretized exactly as pwz_integral.
McEstimate mc_generalized_wiener_integral(const CylinderFunctional& F, const KernelFn& h,
                                          double lambda, const McConfig& cfg);

/// Exact value sum_j c_j exp{-||u_j h||_2^2 / (2 lambda)} via quadrature.
Complex closed_form_wiener_integral(const CylinderFunctional& F, const KernelFn& h,
                                    double lambda);

struct VarianceCheck {
    double sample_variance;
    double expected;      // ||h1||^2 + ||h2||^2
    double sigma;         // sampling std of the variance estimator
    double n_sigma;       // acceptance multiple used
    bool pass;
    int n_samples;
};

/// The PWZ integral of the combined kernel s(h1,h2) over Brownian paths is
/// N(0, ||h1||^2 + ||h2||^2); checks the sample variance against that within
/// 4 sampling sigma.
VarianceCheck check_variance_of_Zs(const KernelFn& h1, const KernelFn& h2,
                                   const McConfig& cfg);

} // namespace wiener
