#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wiener/kernel.hpp"
#include "wiener/mc_oracle.hpp"

using namespace wiener;

namespace {

Grid unit_grid(int n = 1024) { return Grid(1.0, n); }

KernelFn poly_t(const Grid& g) {
    return KernelFn::from_fn(g, [](double t) { return t; });
}

} // namespace

TEST_SUITE("grid") {
    TEST_CASE("construction validates horizon and parity") {
        CHECK_THROWS_AS(Grid(0.0, 8), std::invalid_argument);
        CHECK_THROWS_AS(Grid(-1.0, 8), std::invalid_argument);
        CHECK_THROWS_AS(Grid(1.0, 7), std::invalid_argument);
        CHECK_THROWS_AS(Grid(1.0, 0), std::invalid_argument);
        const Grid g(2.0, 10);
        CHECK(g.node_count() == 11);
        CHECK(g.node(0) == 0.0);
        CHECK(g.node(10) == doctest::Approx(2.0));
        CHECK(g.spacing() == doctest::Approx(0.2));
    }
}

TEST_SUITE("quadrature") {
    TEST_CASE("inner product of constants is the horizon") {
        const Grid g = unit_grid();
        const KernelFn one = KernelFn::constant(g, 1.0);
        CHECK(l2_inner(one, one) == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("Simpson is exact on low-degree polynomials") {
        // oracle: exact antiderivatives of t^2 and t(1-t)
        const Grid g = unit_grid();
        const KernelFn t = poly_t(g);
        const KernelFn one_minus_t = KernelFn::from_fn(g, [](double s) { return 1.0 - s; });
        CHECK(l2_inner(t, t) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(l2_inner(t, one_minus_t) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
        CHECK(l2_norm(t) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
    }

    TEST_CASE("smooth integrand converges at fourth order") {
        const double exact = 0.5 - std::sin(2.0) / 4.0;  // int sin^2 over [0,1]
        double prev_err = 0.0;
        for (int n : {64, 128, 256}) {
            const Grid g = unit_grid(n);
            const KernelFn s = KernelFn::from_fn(g, [](double t) { return std::sin(t); });
            const double err = std::abs(l2_norm_sq(s) - exact);
            if (prev_err > 0.0) CHECK(err < prev_err / 12.0);  // ~16x per halving
            prev_err = err;
        }
        const Grid g = unit_grid(1024);
        const KernelFn s = KernelFn::from_fn(g, [](double t) { return std::sin(t); });
        CHECK(l2_norm_sq(s) == doctest::Approx(exact).epsilon(1e-11));
    }

    TEST_CASE("grid mismatch is rejected") {
        const KernelFn a = KernelFn::constant(unit_grid(64), 1.0);
        const KernelFn b = KernelFn::constant(unit_grid(128), 1.0);
        CHECK_THROWS_AS(l2_inner(a, b), GridMismatchError);
    }

    TEST_CASE("norm of a pointwise product matches the fused form") {
        const Grid g = unit_grid(128);
        const KernelFn u = KernelFn::from_fn(g, [](double t) { return 1.0 + t; });
        const KernelFn h = KernelFn::from_fn(g, [](double t) { return std::cos(t); });
        CHECK(l2_norm_sq_product(u, h) ==
              doctest::Approx(l2_norm_sq(pointwise_product(u, h))).epsilon(1e-15));
    }
}

TEST_SUITE("s_combine") {
    TEST_CASE("five-kernel polynomial combination has the closed form") {
        const Grid g = unit_grid();
        const std::vector<KernelFn> hs = {
            KernelFn::from_fn(g, [](double t) { return std::pow(t, 4); }),
            KernelFn::from_fn(g, [](double t) { return std::sqrt(2.0) * t * t * t; }),
            KernelFn::from_fn(g, [](double t) { return std::sqrt(3.0) * t * t; }),
            KernelFn::from_fn(g, [](double t) { return std::sqrt(2.0) * t; }),
            KernelFn::constant(g, 1.0),
        };
        const KernelFn s = s_combine(hs);
        for (int i = 0; i < g.node_count(); ++i) {
            const double t = g.node(i);
            const double expected = std::pow(t, 4) + t * t + 1.0;
            CHECK(s.values[i] == doctest::Approx(expected).epsilon(1e-14));
        }
    }

    TEST_CASE("two-kernel polynomial combination") {
        const Grid g = unit_grid();
        const KernelFn a = KernelFn::from_fn(g, [](double t) { return std::pow(t, 4) + t * t; });
        const KernelFn b = KernelFn::from_fn(g, [](double t) { return std::pow(t, 4) - t * t; });
        const KernelFn s = s_combine(a, b);
        for (int i = 0; i < g.node_count(); ++i) {
            const double t = g.node(i);
            const double expected = std::sqrt(2.0 * (std::pow(t, 8) + std::pow(t, 4)));
            CHECK(s.values[i] == doctest::Approx(expected).epsilon(1e-14));
        }
    }

    TEST_CASE("singleton combination is the absolute value") {
        const Grid g = unit_grid(64);
        const KernelFn h = KernelFn::from_fn(g, [](double t) { return std::sin(8.0 * t); });
        const KernelFn s = s_combine({h});
        for (int i = 0; i < g.node_count(); ++i) {
            CHECK(s.values[i] == std::abs(h.values[i]));
        }
    }

    TEST_CASE("sign flips leave the combination bit-identical") {
        const Grid g = unit_grid(64);
        const KernelFn a = KernelFn::from_fn(g, [](double t) { return t - 0.3; });
        const KernelFn b = KernelFn::from_fn(g, [](double t) { return std::cos(3.0 * t); });
        const KernelFn s1 = s_combine(a, b);
        const KernelFn s2 = s_combine(scaled(a, -1.0), b);
        const KernelFn s3 = s_combine(scaled(a, -1.0), scaled(b, -1.0));
        for (int i = 0; i < g.node_count(); ++i) {
            CHECK(s1.values[i] == s2.values[i]);
            CHECK(s1.values[i] == s3.values[i]);
        }
    }

    TEST_CASE("combining is associative up to rounding") {
        const Grid g = unit_grid(64);
        const std::vector<KernelFn> hs = {
            KernelFn::from_fn(g, [](double t) { return 1.0 + t; }),
            KernelFn::from_fn(g, [](double t) { return std::sin(t) + 0.5; }),
            KernelFn::from_fn(g, [](double t) { return std::exp(-t); }),
        };
        const KernelFn nested = s_combine(s_combine(hs[0], hs[1]), hs[2]);
        const KernelFn flat = s_combine(hs);
        for (int i = 0; i < g.node_count(); ++i) {
            CHECK(nested.values[i] == doctest::Approx(flat.values[i]).epsilon(4e-16));
        }
    }

    TEST_CASE("class invariance of the squared norm") {
        // only s^2 enters any downstream formula; check against the sum route
        const Grid g = unit_grid(256);
        const KernelFn u = KernelFn::from_fn(g, [](double t) { return 1.0 - 0.5 * t; });
        const std::vector<KernelFn> hs = {
            KernelFn::from_fn(g, [](double t) { return std::sin(2.0 * t); }),
            KernelFn::from_fn(g, [](double t) { return std::cosh(t); }),
        };
        const KernelFn s = s_combine(hs);
        double sum = 0.0;
        for (const KernelFn& h : hs) sum += l2_norm_sq_product(u, h);
        CHECK(l2_norm_sq_product(u, s) == doctest::Approx(sum).epsilon(1e-13));
    }

    TEST_CASE("trig and hyperbolic identities from known formulas") {
        const Grid g = unit_grid(512);
        const double quarter_pi = std::numbers::pi / 4.0;
        const KernelFn one = KernelFn::constant(g, 1.0);
        const KernelFn tan_q =
            KernelFn::from_fn(g, [=](double t) { return std::tan(quarter_pi * t); });
        const KernelFn sec_expected =
            KernelFn::from_fn(g, [=](double t) { return 1.0 / std::cos(quarter_pi * t); });
        const KernelFn sec_combined = s_combine(one, tan_q);
        for (int i = 0; i < g.node_count(); ++i) {
            CHECK(sec_combined.values[i] ==
                  doctest::Approx(sec_expected.values[i]).epsilon(1e-14));
        }

        const KernelFn sinh_fn = KernelFn::from_fn(g, [](double t) { return std::sinh(t); });
        const KernelFn cosh_combined = s_combine(one, sinh_fn);
        for (int i = 0; i < g.node_count(); ++i) {
            CHECK(cosh_combined.values[i] ==
                  doctest::Approx(std::cosh(g.node(i))).epsilon(1e-14));
        }

        // csch(t+1/2) combines with 1 to coth(t+1/2); the canonical
        // representative is the nonnegative member of the class
        const KernelFn csch =
            KernelFn::from_fn(g, [](double t) { return 1.0 / std::sinh(t + 0.5); });
        const KernelFn coth_combined = s_combine(one, csch);
        for (int i = 0; i < g.node_count(); ++i) {
            const double expected = std::cosh(g.node(i) + 0.5) / std::sinh(g.node(i) + 0.5);
            CHECK(coth_combined.values[i] == doctest::Approx(expected).epsilon(1e-14));
        }
    }

    TEST_CASE("rejects empty lists and zero kernels") {
        const Grid g = unit_grid(64);
        CHECK_THROWS_AS(s_combine(std::span<const KernelFn>{}), std::invalid_argument);
        const KernelFn zero = KernelFn::constant(g, 0.0);
        const KernelFn one = KernelFn::constant(g, 1.0);
        CHECK_THROWS_AS(s_combine(one, zero), ZeroKernelError);
    }
}

TEST_SUITE("check_system") {
    TEST_CASE("constant solution set passes") {
        const Grid g = unit_grid(64);
        const KernelFn one = KernelFn::constant(g, 1.0);
        const KernelFn root2 = KernelFn::constant(g, std::sqrt(2.0));
        const SystemReport rep = check_system({one, one, one, root2, root2}, 1e-12);
        CHECK(rep.pass);
        CHECK(rep.max_residual() <= 1e-12);
    }

    TEST_CASE("clause (i) failure is reported with residual 1") {
        const Grid g = unit_grid(64);
        const KernelFn one = KernelFn::constant(g, 1.0);
        const KernelFn two = KernelFn::constant(g, 2.0);
        const SystemReport rep = check_system({one, one, two, one, one}, 1e-10);
        CHECK_FALSE(rep.pass);
        CHECK(rep.residual_product == doctest::Approx(1.0));
    }

    TEST_CASE("randomized candidates satisfy the constructive solution") {
        // property: for any positive f and g, {sqrt(f g), f, g, ...} solves
        // the system with the combined s1, s2
        SplitMix64 rng(20240811);
        const Grid g = unit_grid(128);
        for (int trial = 0; trial < 20; ++trial) {
            const double a = 0.5 + rng.next_unit();
            const double b = 0.5 + rng.next_unit();
            const KernelFn k1 =
                KernelFn::from_fn(g, [&](double t) { return a + std::sin(b * t + a) + 2.0; });
            const KernelFn k2 =
                KernelFn::from_fn(g, [&](double t) { return b + std::cos(a * t) + 2.0; });
            const KernelFn h = KernelFn::from_fn(g, [&](double t) {
                return std::sqrt((a + std::sin(b * t + a) + 2.0) * (b + std::cos(a * t) + 2.0));
            });
            const SystemSolutionSet set{h, k1, k2, s_combine(h, k1), s_combine(h, k2)};
            const SystemReport rep = check_system(set, 1e-12);
            CHECK(rep.pass);
        }
    }
}
