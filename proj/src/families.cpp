#include "wiener/families.hpp"

#include <cmath>
#include <numbers>

namespace wiener {

namespace {

using std::cos;
using std::cosh;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

constexpr double kQuarterPi = std::numbers::pi / 4.0;
const double kSqrt2 = std::numbers::sqrt2;

KernelFn fn(const Grid& g, const std::function<double(double)>& f, std::string tag) {
    return KernelFn::from_fn(g, f, std::move(tag));
}

Family make_poly(const Grid& g) {
    return Family{
        .name = "poly",
        .summary = "h=2t(t^2-1), k1=(t^2-1)^2, k2=4t^2, s1=(t^2-1)(t^2+1), s2=2t(t^2+1)",
        .set = {fn(g, [](double t) { return 2.0 * t * (t * t - 1.0); }, "poly:2t(t^2-1)"),
                fn(g, [](double t) { const double a = t * t - 1.0; return a * a; },
                   "poly:(t^2-1)^2"),
                fn(g, [](double t) { return 4.0 * t * t; }, "poly:4t^2"),
                fn(g, [](double t) { return (t * t - 1.0) * (t * t + 1.0); },
                   "poly:(t^2-1)(t^2+1)"),
                fn(g, [](double t) { return 2.0 * t * (t * t + 1.0); }, "poly:2t(t^2+1)")},
    };
}

Family make_trig1(const Grid& g) {
    return Family{
        .name = "trig1",
        .summary = "h=sin(2t), k1=2sin^2(t), k2=2cos^2(t), s1=2sin(t), s2=2cos(t)",
        .set = {fn(g, [](double t) { return sin(2.0 * t); }, "trig1:sin(2t)"),
                fn(g, [](double t) { const double s = sin(t); return 2.0 * s * s; },
                   "trig1:2sin^2(t)"),
                fn(g, [](double t) { const double c = cos(t); return 2.0 * c * c; },
                   "trig1:2cos^2(t)"),
                fn(g, [](double t) { return 2.0 * sin(t); }, "trig1:2sin(t)"),
                fn(g, [](double t) { return 2.0 * cos(t); }, "trig1:2cos(t)")},
    };
}

Family make_trig2(const Grid& g) {
    return Family{
        .name = "trig2",
        .summary =
            "h=sqrt2 sin(t), k1=sqrt2 sin(t)tan(t), k2=sqrt2 cos(t), s1=sqrt2 tan(t), "
            "s2=sqrt2",
        .set = {fn(g, [](double t) { return kSqrt2 * sin(t); }, "trig2:sqrt2*sin(t)"),
                fn(g, [](double t) { return kSqrt2 * sin(t) * tan(t); },
                   "trig2:sqrt2*sin(t)tan(t)"),
                fn(g, [](double t) { return kSqrt2 * cos(t); }, "trig2:sqrt2*cos(t)"),
                fn(g, [](double t) { return kSqrt2 * tan(t); }, "trig2:sqrt2*tan(t)"),
                KernelFn::constant(g, kSqrt2, "trig2:sqrt2")},
    };
}

Family make_hyperbolic(const Grid& g) {
    return Family{
        .name = "hyperbolic",
        .summary = "h=1, k1=sinh(t+1/2), k2=csch(t+1/2), s1=cosh(t+1/2), s2=coth(t+1/2)",
        .set = {KernelFn::constant(g, 1.0, "hyp:1"),
                fn(g, [](double t) { return sinh(t + 0.5); }, "hyp:sinh(t+1/2)"),
                fn(g, [](double t) { return 1.0 / sinh(t + 0.5); }, "hyp:csch(t+1/2)"),
                fn(g, [](double t) { return cosh(t + 0.5); }, "hyp:cosh(t+1/2)"),
                fn(g, [](double t) { return cosh(t + 0.5) / sinh(t + 0.5); },
                   "hyp:coth(t+1/2)")},
    };
}

// Chain {sin, cos, tan} of a = (pi/4)(t+1/2) combining to sec a, with
// k1 = tan a and k2 = sec a * csc a closing the system around it.
Family make_sec_family(const Grid& g) {
    auto arg = [](double t) { return kQuarterPi * (t + 0.5); };
    KernelFn h_sin = fn(g, [=](double t) { return sin(arg(t)); }, "sec:sin a");
    KernelFn h_cos = fn(g, [=](double t) { return cos(arg(t)); }, "sec:cos a");
    KernelFn h_tan = fn(g, [=](double t) { return tan(arg(t)); }, "sec:tan a");
    KernelFn h = fn(g, [=](double t) { return 1.0 / cos(arg(t)); }, "sec:sec a");
    KernelFn k2 = fn(
        g, [=](double t) { return 1.0 / (cos(arg(t)) * sin(arg(t))); }, "sec:sec a*csc a");
    return Family{
        .name = "sec-family",
        .summary =
            "a=(pi/4)(t+1/2): H={sin a, cos a, tan a} -> s(H)=sec a; k1=tan a, "
            "k2=sec a*csc a",
        .set = {h, h_tan, k2, s_combine(h, h_tan), s_combine(h, k2)},
        .collapse_chains = {{"H", {h_sin, h_cos, h_tan}}},
        .product_chain = {h_sin, h_cos, h_tan},
    };
}

// h = 2 sqrt(csc a * cosh a) with factor chains combining to s(K1) = 2 csc a
// and s(K2) = 2 cosh a, a = (pi/4)(t+1/2).
Family make_mixed_hyp_trig(const Grid& g) {
    auto arg = [](double t) { return kQuarterPi * (t + 0.5); };
    KernelFn h = fn(
        g, [=](double t) { return 2.0 * sqrt(cosh(arg(t)) / sin(arg(t))); },
        "mixed:2sqrt(csc a*cosh a)");
    std::vector<KernelFn> kchain1 = {
        fn(g, [=](double t) { return 2.0 * tanh(arg(t)); }, "mixed:2tanh a"),
        fn(g, [=](double t) { return 2.0 / cosh(arg(t)); }, "mixed:2sech a"),
        fn(g, [=](double t) { return 2.0 * cos(arg(t)) / sin(arg(t)); }, "mixed:2cot a"),
    };
    std::vector<KernelFn> kchain2 = {
        fn(g, [=](double t) { return kSqrt2 * sin(arg(t)); }, "mixed:sqrt2 sin a"),
        fn(g, [=](double t) { return kSqrt2 * cos(arg(t)); }, "mixed:sqrt2 cos a"),
        fn(g, [=](double t) { return kSqrt2 * sinh(arg(t)); }, "mixed:sqrt2 sinh a"),
        fn(g, [=](double t) { return kSqrt2 * cosh(arg(t)); }, "mixed:sqrt2 cosh a"),
    };
    KernelFn k1 = fn(g, [=](double t) { return 2.0 / sin(arg(t)); }, "mixed:2csc a");
    KernelFn k2 = fn(g, [=](double t) { return 2.0 * cosh(arg(t)); }, "mixed:2cosh a");
    return Family{
        .name = "mixed-hyp-trig",
        .summary =
            "a=(pi/4)(t+1/2): h=2sqrt(csc a cosh a); K1={2tanh a,2sech a,2cot a}->2csc a; "
            "K2={sqrt2 sin a,sqrt2 cos a,sqrt2 sinh a,sqrt2 cosh a}->2cosh a",
        .set = {h, k1, k2, s_combine(h, k1), s_combine(h, k2)},
        .collapse_chains = {{"K1", kchain1}, {"K2", kchain2}},
        .factor_chain1 = kchain1,
        .factor_chain2 = kchain2,
    };
}

void fill_defaults(Family& fam) {
    if (fam.collapse_chains.empty()) {
        fam.collapse_chains = {{"set", {fam.set.h, fam.set.k1, fam.set.k2}}};
    }
    if (fam.product_chain.empty()) fam.product_chain = {fam.set.h};
    if (fam.factor_chain1.empty()) fam.factor_chain1 = {fam.set.k1};
    if (fam.factor_chain2.empty()) fam.factor_chain2 = {fam.set.k2};
}

} // namespace

std::vector<KernelFn> Family::point_pool() const {
    return {set.h, set.k1, set.k2, set.s1, set.s2};
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names = {
        "poly", "trig1", "trig2", "hyperbolic", "sec-family", "mixed-hyp-trig"};
    return names;
}

bool is_family_name(std::string_view name) {
    for (const auto& n : family_names()) {
        if (n == name) return true;
    }
    return false;
}

Family make_family(std::string_view name, const Grid& grid) {
    auto build = [&]() -> Family {
        if (name == "poly") return make_poly(grid);
        if (name == "trig1") return make_trig1(grid);
        if (name == "trig2") return make_trig2(grid);
        if (name == "hyperbolic") return make_hyperbolic(grid);
        if (name == "sec-family") return make_sec_family(grid);
        if (name == "mixed-hyp-trig") return make_mixed_hyp_trig(grid);
        throw RegistryError("unknown kernel family: " + std::string(name));
    };
    Family fam = build();
    fill_defaults(fam);
    return fam;
}

} // namespace wiener
