#include <doctest.h>

#include <cmath>

#include "wiener/functional.hpp"
#include "wiener/mc_oracle.hpp"

using namespace wiener;

namespace {

const Grid kGrid(1.0, 1024);

SamplePath path_from(const Grid& g, const std::function<double(double)>& fn) {
    std::vector<double> v(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) v[i] = fn(g.node(i));
    v[0] = 0.0;
    return SamplePath(g, std::move(v));
}

SamplePath scaled_path(const SamplePath& y, double rho) {
    std::vector<double> v = y.values;
    for (double& x : v) x *= rho;
    return SamplePath(y.grid, std::move(v));
}

CylinderFunctional single_atom(Complex w, const KernelFn& u) {
    return CylinderFunctional(u.grid, {{w, u}});
}

} // namespace

TEST_SUITE("pwz") {
    TEST_CASE("zero integrand gives zero") {
        const KernelFn zero = KernelFn::constant(kGrid, 0.0);
        const SamplePath y = path_from(kGrid, [](double t) { return std::sin(5.0 * t); });
        CHECK(pwz_integral(zero, y) == 0.0);
    }

    TEST_CASE("constant integrand telescopes to the endpoint") {
        const KernelFn one = KernelFn::constant(kGrid, 1.0);
        const SamplePath y = path_from(kGrid, [](double t) { return t; });
        CHECK(pwz_integral(one, y) == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("linear integrand against a quadratic path") {
        // oracle: int_0^1 t d(t^2) = int_0^1 2 t^2 dt = 2/3, midpoint rule
        // error is O(spacing^2)
        const KernelFn t = KernelFn::from_fn(kGrid, [](double s) { return s; });
        const SamplePath y = path_from(kGrid, [](double s) { return s * s; });
        CHECK(pwz_integral(t, y) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    }

    TEST_CASE("path validation") {
        std::vector<double> v(kGrid.node_count(), 1.0);
        CHECK_THROWS_AS(SamplePath(kGrid, v), std::invalid_argument);  // y(0) != 0
    }
}

TEST_SUITE("evaluate") {
    TEST_CASE("single unit atom at the identity path") {
        const CylinderFunctional F = single_atom(1.0, KernelFn::constant(kGrid, 1.0));
        const SamplePath y = path_from(kGrid, [](double t) { return t; });
        const Complex v = evaluate(F, y);
        CHECK(v.real() == doctest::Approx(0.5403023058681398).epsilon(1e-12));
        CHECK(v.imag() == doctest::Approx(0.8414709848078965).epsilon(1e-12));
    }

    TEST_CASE("empty functional is identically zero") {
        const CylinderFunctional F(kGrid);
        const SamplePath y = path_from(kGrid, [](double t) { return std::cos(t) - 1.0; });
        CHECK(evaluate(F, y) == Complex(0.0, 0.0));
    }

    TEST_CASE("conjugate atom pairs are real-valued") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return 1.0 + t; });
        const CylinderFunctional F(kGrid, {{1.0, u}, {1.0, scaled(u, -1.0)}});
        for (int i = 0; i < 5; ++i) {
            const SamplePath y = sample_brownian(kGrid, 99, i);
            const Complex v = evaluate(F, y);
            CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(v.real() ==
                  doctest::Approx(2.0 * std::cos(pwz_integral(u, y))).epsilon(1e-12));
        }
    }
}

TEST_SUITE("scale_argument") {
    TEST_CASE("identity scale is a no-op") {
        const KernelFn u = KernelFn::constant(kGrid, 1.0);
        const CylinderFunctional F = single_atom({0.5, -0.25}, u);
        const CylinderFunctional S = scale_argument(F, 1.0);
        CHECK(measures_equal(F, S, 1e-15).equal);
    }

    TEST_CASE("scaling moves the support points") {
        const CylinderFunctional F = single_atom(1.0, KernelFn::constant(kGrid, 1.0));
        const CylinderFunctional S = scale_argument(F, 1.0 / std::sqrt(2.0));
        REQUIRE(S.atom_count() == 1);
        CHECK(S.atoms()[0].point.values[17] == doctest::Approx(1.0 / std::sqrt(2.0)));
    }

    TEST_CASE("agrees with evaluating at the scaled path") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return std::sin(3.0 * t); });
        const KernelFn v = KernelFn::from_fn(kGrid, [](double t) { return 1.0 - t; });
        const CylinderFunctional F(kGrid, {{{0.3, 0.7}, u}, {{-1.0, 0.1}, v}});
        for (int i = 0; i < 10; ++i) {
            const SamplePath y = sample_brownian(kGrid, 123, i);
            const double rho = 0.25 + 0.5 * i;
            const Complex lhs = evaluate(scale_argument(F, rho), y);
            const Complex rhs = evaluate(F, scaled_path(y, rho));
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }

    TEST_CASE("zero scale is rejected") {
        const CylinderFunctional F(kGrid);
        CHECK_THROWS_AS(scale_argument(F, 0.0), std::invalid_argument);
    }

    TEST_CASE("round trip through rho and 1/rho") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return t * t + 0.5; });
        const CylinderFunctional F(kGrid, {{{0.9, -0.2}, u}});
        const CylinderFunctional back = scale_argument(scale_argument(F, 3.0), 1.0 / 3.0);
        CHECK(measures_equal(F, back, 1e-12).equal);
    }
}

TEST_SUITE("product") {
    TEST_CASE("points add and weights multiply") {
        const KernelFn u = KernelFn::constant(kGrid, 1.0);
        const CylinderFunctional F = single_atom(1.0, u);
        const CylinderFunctional P = product(F, F);
        REQUIRE(P.atom_count() == 1);
        CHECK(P.atoms()[0].point.values[5] == doctest::Approx(2.0));
        CHECK(P.atoms()[0].weight == Complex(1.0, 0.0));
    }

    TEST_CASE("empty annihilates") {
        const CylinderFunctional F = single_atom(1.0, KernelFn::constant(kGrid, 1.0));
        const CylinderFunctional empty(kGrid);
        CHECK(product(F, empty).empty());
    }

    TEST_CASE("evaluation is a homomorphism") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return std::cos(2.0 * t); });
        const KernelFn v = KernelFn::from_fn(kGrid, [](double t) { return t - 0.5; });
        const CylinderFunctional F(kGrid, {{{0.6, 0.1}, u}, {{0.2, -0.4}, v}});
        const CylinderFunctional G(kGrid, {{{-0.3, 0.8}, scaled(u, 0.5)}, {{1.0, 0.0}, v}});
        const CylinderFunctional P = product(F, G);
        for (int i = 0; i < 8; ++i) {
            const SamplePath y = sample_brownian(kGrid, 777, i);
            const Complex lhs = evaluate(P, y);
            const Complex rhs = evaluate(F, y) * evaluate(G, y);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        }
    }

    TEST_CASE("commutative and associative as measures") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return 1.0 + 2.0 * t; });
        const KernelFn v = KernelFn::from_fn(kGrid, [](double t) { return std::sin(t); });
        const KernelFn w = KernelFn::from_fn(kGrid, [](double t) { return std::exp(-t); });
        const CylinderFunctional F(kGrid, {{{0.5, 0.5}, u}, {{0.1, 0.0}, v}});
        const CylinderFunctional G(kGrid, {{{1.0, -1.0}, w}});
        const CylinderFunctional H(kGrid, {{{0.0, 0.7}, v}, {{0.3, 0.3}, w}});
        CHECK(measures_equal(product(F, G), product(G, F), 1e-12).equal);
        CHECK(measures_equal(product(product(F, G), H), product(F, product(G, H)), 1e-12)
                  .equal);
    }
}

TEST_SUITE("canonicalize") {
    TEST_CASE("exact duplicates merge") {
        const KernelFn u = KernelFn::constant(kGrid, 1.0);
        const CylinderFunctional F(kGrid, {{1.0, u}, {1.0, u}});
        const CylinderFunctional C = canonicalize(F);
        REQUIRE(C.atom_count() == 1);
        CHECK(C.atoms()[0].weight == Complex(2.0, 0.0));
    }

    TEST_CASE("cancelling weights vanish") {
        const KernelFn u = KernelFn::constant(kGrid, 1.0);
        const CylinderFunctional F(kGrid, {{1.0, u}, {-1.0, u}});
        CHECK(canonicalize(F).empty());
    }

    TEST_CASE("weights below the drop tolerance vanish") {
        const KernelFn u = KernelFn::constant(kGrid, 1.0);
        const CylinderFunctional F(kGrid, {{{1e-15, 0.0}, u}});
        CHECK(canonicalize(F).empty());
    }

    TEST_CASE("idempotent and evaluation preserving") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return t; });
        const KernelFn nearby = KernelFn::from_fn(kGrid, [](double t) { return t + 1e-13; });
        const CylinderFunctional F(
            kGrid, {{{0.4, 0.1}, u}, {{0.3, 0.0}, nearby}, {{1e-14, 0.0}, scaled(u, 2.0)}});
        const CylinderFunctional once = canonicalize(F);
        const CylinderFunctional twice = canonicalize(once);
        CHECK(once.atom_count() == twice.atom_count());
        CHECK(measures_equal(once, twice, 1e-14).equal);
        const SamplePath y = sample_brownian(kGrid, 5, 0);
        const double budget = 1e-10 + 1e-12 * F.atom_count();
        CHECK(std::abs(evaluate(F, y) - evaluate(once, y)) <= budget);
    }
}

TEST_SUITE("measures_equal") {
    TEST_CASE("reflexive") {
        const KernelFn u = KernelFn::from_fn(kGrid, [](double t) { return std::sin(t); });
        const CylinderFunctional F(kGrid, {{{0.2, 0.9}, u}});
        const MeasureComparison cmp = measures_equal(F, F, 1e-15);
        CHECK(cmp.equal);
        CHECK(cmp.max_discrepancy == 0.0);
    }

    TEST_CASE("distinct constants differ by their L2 distance") {
        const CylinderFunctional F(kGrid, {{1.0, KernelFn::constant(kGrid, 1.0)}});
        const CylinderFunctional G(kGrid, {{1.0, KernelFn::constant(kGrid, 2.0)}});
        const MeasureComparison cmp = measures_equal(F, G, 1e-9);
        CHECK_FALSE(cmp.equal);
        CHECK(cmp.max_discrepancy == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("atom count mismatch is unequal") {
        const KernelFn u = KernelFn::constant(kGrid, 1.0);
        const CylinderFunctional F(kGrid, {{1.0, u}, {0.5, scaled(u, 2.0)}});
        const CylinderFunctional G(kGrid, {{1.0, u}});
        CHECK_FALSE(measures_equal(F, G, 1e-9).equal);
        CHECK_FALSE(measures_equal(G, F, 1e-9).equal);
    }
}
