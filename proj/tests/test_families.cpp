#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wiener/families.hpp"
#include "wiener/transform.hpp"

using namespace wiener;

namespace {
const Grid kGrid(1.0, 1024);
}

TEST_SUITE("families") {
    TEST_CASE("registry holds the six built-ins") {
        CHECK(family_names().size() == 6);
        for (const std::string& name : family_names()) {
            CHECK(is_family_name(name));
            CHECK_NOTHROW(make_family(name, kGrid));
        }
        CHECK_FALSE(is_family_name("fibonacci"));
        CHECK_THROWS_AS(make_family("fibonacci", kGrid), RegistryError);
    }

    TEST_CASE("every built-in solves the system to near machine precision") {
        for (const std::string& name : family_names()) {
            CAPTURE(name);
            const Family fam = make_family(name, kGrid);
            double scale = 1.0;
            for (const KernelFn* k :
                 {&fam.set.h, &fam.set.k1, &fam.set.k2, &fam.set.s1, &fam.set.s2}) {
                scale = std::max(scale, max_abs_value(*k));
            }
            const SystemReport rep = check_system(fam.set, 1e-10 * scale);
            CHECK(rep.pass);
        }
    }

    TEST_CASE("hyperbolic members match their defining formulas") {
        const Family fam = make_family("hyperbolic", kGrid);
        for (int i = 0; i < kGrid.node_count(); i += 97) {
            const double t = kGrid.node(i);
            CHECK(fam.set.h.values[i] == 1.0);
            CHECK(fam.set.k1.values[i] == doctest::Approx(std::sinh(t + 0.5)).epsilon(1e-15));
            CHECK(fam.set.k2.values[i] ==
                  doctest::Approx(1.0 / std::sinh(t + 0.5)).epsilon(1e-15));
            CHECK(fam.set.s1.values[i] == doctest::Approx(std::cosh(t + 0.5)).epsilon(1e-14));
            CHECK(fam.set.s2.values[i] ==
                  doctest::Approx(std::cosh(t + 0.5) / std::sinh(t + 0.5)).epsilon(1e-14));
        }
    }

    TEST_CASE("trig2 members match their defining formulas") {
        const Family fam = make_family("trig2", kGrid);
        const double r2 = std::numbers::sqrt2;
        for (int i = 0; i < kGrid.node_count(); i += 131) {
            const double t = kGrid.node(i);
            CHECK(fam.set.h.values[i] == doctest::Approx(r2 * std::sin(t)).epsilon(1e-15));
            CHECK(fam.set.k1.values[i] ==
                  doctest::Approx(r2 * std::sin(t) * std::tan(t)).epsilon(1e-15));
            CHECK(fam.set.k2.values[i] == doctest::Approx(r2 * std::cos(t)).epsilon(1e-15));
            CHECK(fam.set.s1.values[i] == doctest::Approx(r2 * std::tan(t)).epsilon(1e-13));
            CHECK(fam.set.s2.values[i] == doctest::Approx(r2).epsilon(1e-15));
        }
    }

    TEST_CASE("sec-family chain combines to the secant closed form") {
        const Family fam = make_family("sec-family", kGrid);
        REQUIRE(fam.collapse_chains.size() == 1);
        const KernelFn s = s_combine(fam.collapse_chains[0].kernels);
        for (int i = 0; i < kGrid.node_count(); ++i) {
            const double a = (std::numbers::pi / 4.0) * (kGrid.node(i) + 0.5);
            CHECK(s.values[i] == doctest::Approx(1.0 / std::cos(a)).epsilon(1e-13));
        }
        // and that closed form is the family's h
        for (int i = 0; i < kGrid.node_count(); ++i) {
            CHECK(s.values[i] == doctest::Approx(fam.set.h.values[i]).epsilon(1e-13));
        }
    }

    TEST_CASE("mixed family factor chains combine to 2csc and 2cosh") {
        const Family fam = make_family("mixed-hyp-trig", kGrid);
        const KernelFn s1 = s_combine(fam.factor_chain1);
        const KernelFn s2 = s_combine(fam.factor_chain2);
        for (int i = 0; i < kGrid.node_count(); ++i) {
            const double a = (std::numbers::pi / 4.0) * (kGrid.node(i) + 0.5);
            CHECK(s1.values[i] == doctest::Approx(2.0 / std::sin(a)).epsilon(1e-13));
            CHECK(s2.values[i] == doctest::Approx(2.0 * std::cosh(a)).epsilon(1e-13));
        }
        // the factor combinations reproduce k1, k2 and hence h^2 = k1 k2
        CHECK(product_hypothesis_residual(fam.set.h, s1, s2) < 1e-12);
    }

    TEST_CASE("a perturbed set fails clause (i)") {
        Family fam = make_family("trig1", kGrid);
        SystemSolutionSet broken = fam.set;
        broken.k2 = scaled(broken.k2, 1.01);
        const SystemReport rep = check_system(broken, 1e-10);
        CHECK_FALSE(rep.pass);
        CHECK(rep.residual_product > 1e-3);
    }
}
