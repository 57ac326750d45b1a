#include "wiener/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string_view>

namespace wiener {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be a positive real");
    }
}

/// Kahan-compensated accumulator; batches are combined in index order so the
/// reduction does not depend on how samples are distributed across workers.
struct Kahan {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    // 53-bit mantissa shifted into (0, 1]
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
}

double SplitMix64::next_gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_gaussian_;
    }
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_gaussian_ = r * std::sin(kTwoPi * u2);
    has_cached_ = true;
    return r * std::cos(kTwoPi * u2);
}

int SplitMix64::next_below(int n) {
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

SplitMix64 path_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed ^ mix64(index + 1)));
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    // FNV-1a over the label, folded into the master seed
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return mix64(seed ^ h);
}

McConfig::McConfig(Grid g, int n, std::uint64_t s, std::vector<double> ls)
    : grid(g), n_samples(n), seed(s), lambdas(std::move(ls)) {
    if (n_samples < 1) {
        throw std::invalid_argument("McConfig: n_samples must be at least 1");
    }
    for (double l : lambdas) require_positive_lambda(l);
}

SamplePath sample_brownian(const Grid& grid, std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng = path_stream(seed, index);
    const double step = std::sqrt(grid.spacing());
    std::vector<double> v(grid.node_count());
    v[0] = 0.0;
    for (int i = 0; i < grid.intervals(); ++i) {
        v[i + 1] = v[i] + step * rng.next_gaussian();
    }
    return SamplePath(grid, std::move(v));
}

McEstimate mc_generalized_wiener_integral(const CylinderFunctional& F, const KernelFn& h,
                                          double lambda, const McConfig& cfg) {
    require_positive_lambda(lambda);
    require_same_grid(F.grid(), h.grid, "mc_generalized_wiener_integral");
    require_same_grid(F.grid(), cfg.grid, "mc_generalized_wiener_integral");

    const Grid& grid = cfg.grid;
    const int n_int = grid.intervals();
    const double inv_sqrt_lambda = 1.0 / std::sqrt(lambda);
    const double step = std::sqrt(grid.spacing());

    // Midpoint weights of each atom's kernel product u_j * h, matching the
    // Stieltjes rule in pwz_integral term for term.
    const std::size_t n_atoms = F.atoms().size();
    std::vector<std::vector<double>> mids(n_atoms, std::vector<double>(n_int));
    std::vector<Complex> weights(n_atoms);
    for (std::size_t j = 0; j < n_atoms; ++j) {
        const Atom& a = F.atoms()[j];
        weights[j] = a.weight;
        std::vector<double> prod(grid.node_count());
        for (int i = 0; i < grid.node_count(); ++i) {
            prod[i] = a.point.values[i] * h.values[i];
        }
        for (int i = 0; i < n_int; ++i) mids[j][i] = 0.5 * (prod[i] + prod[i + 1]);
    }

    const int n = cfg.n_samples;
    const int n_batches = std::min(n, 100);
    Kahan mean_re, mean_im;
    std::vector<Complex> batch_means;
    batch_means.reserve(n_batches);

    std::vector<double> path(grid.node_count());
    int sample = 0;
    for (int b = 0; b < n_batches; ++b) {
        const int batch_size = n / n_batches + (b < n % n_batches ? 1 : 0);
        Kahan batch_re, batch_im;
        for (int s = 0; s < batch_size; ++s, ++sample) {
            SplitMix64 rng = path_stream(cfg.seed, static_cast<std::uint64_t>(sample));
            path[0] = 0.0;
            for (int i = 0; i < n_int; ++i) {
                path[i + 1] = path[i] + step * rng.next_gaussian();
            }
            Complex value = 0.0;
            for (std::size_t j = 0; j < n_atoms; ++j) {
                double acc = 0.0;
                const std::vector<double>& m = mids[j];
                for (int i = 0; i < n_int; ++i) acc += m[i] * (path[i + 1] - path[i]);
                value += weights[j] * std::polar(1.0, inv_sqrt_lambda * acc);
            }
            batch_re.add(value.real());
            batch_im.add(value.imag());
        }
        mean_re.add(batch_re.sum);
        mean_im.add(batch_im.sum);
        if (batch_size > 0) {
            batch_means.emplace_back(batch_re.sum / batch_size, batch_im.sum / batch_size);
        }
    }

    const Complex mean(mean_re.sum / n, mean_im.sum / n);
    double std_error = std::numeric_limits<double>::infinity();
    if (batch_means.size() >= 2) {
        const auto nb = static_cast<double>(batch_means.size());
        double var = 0.0;
        for (const Complex& m : batch_means) var += std::norm(m - mean);
        var /= (nb - 1.0);
        std_error = std::sqrt(var / nb);
    }
    return {mean, std_error, n};
}

Complex closed_form_wiener_integral(const CylinderFunctional& F, const KernelFn& h,
                                    double lambda) {
    require_positive_lambda(lambda);
    require_same_grid(F.grid(), h.grid, "closed_form_wiener_integral");
    Complex acc = 0.0;
    for (const Atom& a : F.atoms()) {
        acc += a.weight * std::exp(-l2_norm_sq_product(a.point, h) / (2.0 * lambda));
    }
    return acc;
}

VarianceCheck check_variance_of_Zs(const KernelFn& h1, const KernelFn& h2,
                                   const McConfig& cfg) {
    require_same_grid(h1.grid, cfg.grid, "check_variance_of_Zs");
    const KernelFn s = s_combine(h1, h2);
    const double expected = l2_norm_sq(h1) + l2_norm_sq(h2);

    const int n = cfg.n_samples;
    Kahan sum, sum_sq;
    for (int i = 0; i < n; ++i) {
        const SamplePath x = sample_brownian(cfg.grid, cfg.seed, static_cast<std::uint64_t>(i));
        const double z = pwz_integral(s, x);
        sum.add(z);
        sum_sq.add(z * z);
    }
    const double mean = sum.sum / n;
    double variance = 0.0;
    if (n >= 2) variance = (sum_sq.sum - n * mean * mean) / (n - 1.0);

    // sampling std of the variance estimator for Gaussian data: s^2 sqrt(2/(n-1))
    double sigma = std::numeric_limits<double>::infinity();
    if (n >= 2) sigma = variance * std::sqrt(2.0 / (n - 1.0));

    VarianceCheck out{variance, expected, sigma, 4.0, false, n};
    out.pass = std::abs(variance - expected) <= out.n_sigma * sigma;
    return out;
}

} // namespace wiener
