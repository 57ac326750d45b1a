#include "wiener/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace wiener {

namespace {

constexpr std::string_view kComparisonNote =
    "measure equality uses atom-pairing with merge tolerances as a surrogate for "
    "s-a.e. equality; Monte Carlo cells check equality in expectation only";

std::string current_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

class CellTimer {
public:
    CellTimer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt_double(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

/// Small signed rationals used to scale support points.
double random_rational(SplitMix64& rng) {
    static constexpr int nums[] = {1, 2, 3};
    static constexpr int dens[] = {1, 2, 4};
    const double num = nums[rng.next_below(3)];
    const double den = dens[rng.next_below(3)];
    const double sign = rng.next_below(2) == 0 ? 1.0 : -1.0;
    return sign * num / den;
}

Complex random_unit_disk(SplitMix64& rng) {
    const double r = std::sqrt(rng.next_unit());
    const double theta = 2.0 * std::numbers::pi * rng.next_unit();
    return std::polar(r, theta);
}

double random_q_multiplier(SplitMix64& rng) {
    static constexpr double mults[] = {0.5, 1.0, 1.5, 2.0, 3.0};
    return mults[rng.next_below(5)];
}

struct FamilyContext {
    Family family;
    std::vector<KernelFn> pool;
};

Family resolve_family(const std::string& name, const Grid& grid,
                      const std::optional<KernelLibrary>& lib) {
    if (is_family_name(name)) return make_family(name, grid);
    if (lib) {
        const auto h = lib->kernels.find(name + ".h");
        const auto k1 = lib->kernels.find(name + ".k1");
        const auto k2 = lib->kernels.find(name + ".k2");
        if (h != lib->kernels.end() && k1 != lib->kernels.end() && k2 != lib->kernels.end()) {
            auto member = [&](const char* suffix, const KernelFn& fallback) {
                const auto it = lib->kernels.find(name + suffix);
                return it != lib->kernels.end() ? it->second : fallback;
            };
            Family fam{
                .name = name,
                .summary = "user kernel set " + name,
                .set = {h->second, k1->second, k2->second,
                        member(".s1", s_combine(h->second, k1->second)),
                        member(".s2", s_combine(h->second, k2->second))},
                .collapse_chains = {{"set", {h->second, k1->second, k2->second}}},
                .product_chain = {h->second},
                .factor_chain1 = {k1->second},
                .factor_chain2 = {k2->second},
            };
            return fam;
        }
    }
    throw RegistryError("unknown kernel family: " + name);
}

/// Runs `body` for one cell, converting a hypothesis violation into a
/// flagged entry instead of aborting the suite.
template <class Body>
void run_cell(VerificationReport& report, ReportEntry entry, Body&& body) {
    CellTimer timer;
    try {
        body(entry);
    } catch (const HypothesisError& e) {
        entry.status = CellStatus::HypothesisViolated;
        entry.note = e.what();
    }
    entry.runtime_ms = timer.ms();
    report.entries.push_back(std::move(entry));
}

void set_outcome(ReportEntry& entry, const IdentityCheck& check) {
    entry.status = check.pass ? CellStatus::Pass : CellStatus::Fail;
    entry.measure_discrepancy = check.measure_discrepancy;
    entry.pointwise_discrepancy = check.pointwise_discrepancy;
}

void set_outcome(ReportEntry& entry, const EqualityReport& check) {
    entry.status = check.equal ? CellStatus::Pass : CellStatus::Fail;
    entry.measure_discrepancy = check.max_discrepancy;
}

} // namespace

const std::vector<std::string>& known_identities() {
    static const std::vector<std::string> ids = {
        "cor3.3", "thm3.4", "thm3.6", "cor3.8", "cor3.9", "thm5.1",
        "thm5.2", "thm5.3", "thm6.1", "eq6.2",  "lem6.2", "thm6.3"};
    return ids;
}

void SuiteConfig::validate() const {
    for (const std::string& id : identities) {
        if (std::find(known_identities().begin(), known_identities().end(), id) ==
            known_identities().end()) {
            throw std::invalid_argument("unknown identity: " + id);
        }
    }
    for (double q : q_values) {
        if (q == 0.0 || !std::isfinite(q)) {
            throw std::invalid_argument("q values must be nonzero reals");
        }
    }
    for (double l : lambdas) {
        if (!(l > 0.0)) throw std::invalid_argument("lambdas must be positive");
    }
    if (n_paths < 1 || reps < 1 || mc_samples < 1) {
        throw std::invalid_argument("counts must be positive");
    }
    if (!(tol.hypothesis > 0.0) || !(tol.measure > 0.0) || !(tol.pointwise > 0.0) ||
        !(tol.merge > 0.0) || !(tol.drop > 0.0)) {
        throw std::invalid_argument("tolerances must be positive");
    }
}

CylinderFunctional random_functional(SplitMix64& rng, std::span<const KernelFn> pool,
                                     int max_atoms, const CanonicalizeOptions& opts) {
    const int n_atoms = 1 + rng.next_below(max_atoms);
    std::vector<Atom> atoms;
    atoms.reserve(n_atoms);
    for (int i = 0; i < n_atoms; ++i) {
        const KernelFn& base = pool[rng.next_below(static_cast<int>(pool.size()))];
        atoms.push_back({random_unit_disk(rng), scaled(base, random_rational(rng))});
    }
    return canonicalize(CylinderFunctional(pool.front().grid, std::move(atoms)), opts);
}

std::vector<SamplePath> random_paths(const Grid& grid, std::uint64_t seed, int count) {
    std::vector<SamplePath> paths;
    paths.reserve(count);
    for (int i = 0; i < count; ++i) {
        paths.push_back(sample_brownian(grid, seed, static_cast<std::uint64_t>(i)));
    }
    return paths;
}

namespace {

struct SuiteRunner {
    const SuiteConfig& cfg;
    Grid grid;
    IdentityTolerances itol;
    CanonicalizeOptions copts;
    VerificationReport& report;

    bool enabled(std::string_view id) const {
        if (cfg.identities.empty()) return true;
        return std::find(cfg.identities.begin(), cfg.identities.end(), id) !=
               cfg.identities.end();
    }

    std::vector<std::string> family_list() const {
        return cfg.families.empty() ? family_names() : cfg.families;
    }

    std::uint64_t cell_seed(std::string_view identity, std::string_view family, double q,
                            int rep, std::string_view extra = {}) const {
        std::string label(identity);
        label += '/';
        label += family;
        label += "/q=" + fmt_double(q) + "/rep=" + std::to_string(rep);
        if (!extra.empty()) {
            label += '/';
            label += extra;
        }
        return derive_seed(cfg.seed, label);
    }

    ReportEntry base_entry(std::string_view identity, std::string_view family,
                           std::uint64_t seed) const {
        ReportEntry e;
        e.identity = std::string(identity);
        e.family = std::string(family);
        e.seed = seed;
        return e;
    }

    CylinderFunctional draw_F(SplitMix64& rng, const FamilyContext& ctx, int max_atoms) const {
        if (cfg.fixed_F) return *cfg.fixed_F;
        return random_functional(rng, ctx.pool, max_atoms, copts);
    }

    CylinderFunctional draw_G(SplitMix64& rng, const FamilyContext& ctx, int max_atoms) const {
        if (cfg.fixed_G) return *cfg.fixed_G;
        if (cfg.fixed_F && !cfg.fixed_G) return *cfg.fixed_F;
        return random_functional(rng, ctx.pool, max_atoms, copts);
    }

    int effective_reps() const { return cfg.fixed_F ? 1 : cfg.reps; }

    std::vector<SamplePath> cell_paths(std::uint64_t seed) const {
        return random_paths(grid, derive_seed(seed, "paths"), cfg.n_paths);
    }

    // ---- identity runners ------------------------------------------------

    void run_inverse(const FamilyContext& ctx, double q, int rep) {
        const std::uint64_t seed = cell_seed("cor3.3", ctx.family.name, q, rep);
        SplitMix64 rng(seed);
        ReportEntry entry = base_entry("cor3.3", ctx.family.name, seed);
        entry.params = {{"q", q}, {"rep", rep}};
        run_cell(report, std::move(entry), [&](ReportEntry& e) {
            const CylinderFunctional F = draw_F(rng, ctx, 5);
            const KernelFn& h = ctx.pool[rng.next_below(static_cast<int>(ctx.pool.size()))];
            const TransformSpec spec(q, h);
            const CylinderFunctional round_trip =
                gfft(gfft(F, spec), TransformSpec(-q, h));
            const MeasureComparison cmp = measures_equal(round_trip, F, itol.measure, copts);
            e.status = cmp.equal ? CellStatus::Pass : CellStatus::Fail;
            e.measure_discrepancy = cmp.max_discrepancy;
        });
    }

    void run_pair_identity(std::string_view id, const FamilyContext& ctx, double q, int rep) {
        const std::uint64_t seed = cell_seed(id, ctx.family.name, q, rep);
        SplitMix64 rng(seed);
        ReportEntry entry = base_entry(id, ctx.family.name, seed);
        entry.params = {{"q", q}, {"rep", rep}};
        run_cell(report, std::move(entry), [&](ReportEntry& e) {
            const CylinderFunctional F = draw_F(rng, ctx, 3);
            const CylinderFunctional G = draw_G(rng, ctx, 3);
            const auto paths = cell_paths(e.seed);
            const SystemSolutionSet& set = ctx.family.set;
            IdentityCheck check{};
            if (id == "thm3.4") {
                check = verify_transform_of_convolution(F, G, set.h, set.k1, set.k2, q,
                                                        paths, itol);
            } else if (id == "thm3.6") {
                check = verify_convolution_of_transforms(F, G, set.h, set.k1, set.k2, q,
                                                         paths, itol);
            } else if (id == "cor3.8") {
                const KernelFn one = KernelFn::constant(grid, 1.0, "1");
                check = verify_convolution_of_transforms(F, G, one, one, one, q, paths, itol);
            } else if (id == "cor3.9") {
                check = verify_convolution_of_transforms(F, G, set.h, set.h, set.h, q,
                                                         paths, itol);
            } else if (id == "thm5.2") {
                check = verify_iterated_transform_convolution(
                    F, G, ctx.family.product_chain, set.k1, set.k2, q, paths, itol);
            } else if (id == "thm5.3") {
                check = verify_factor_chain_convolution(F, G, set.h, ctx.family.factor_chain1,
                                                        ctx.family.factor_chain2, q, paths,
                                                        itol);
            } else if (id == "lem6.2") {
                const double q1 = 2.0 * q, q2 = 3.0 * q;
                e.params["q1"] = q1;
                e.params["q2"] = q2;
                check = verify_lemma_mixed_convolution(F, G, set.h, set.k1, set.k2, q, q1,
                                                       q2, paths, itol);
            }
            set_outcome(e, check);
        });
    }

    void run_collapse(std::string_view id, const FamilyContext& ctx, double q, int rep) {
        for (const NamedChain& chain : ctx.family.collapse_chains) {
            const std::uint64_t seed = cell_seed(id, ctx.family.name, q, rep, chain.name);
            SplitMix64 rng(seed);
            ReportEntry entry = base_entry(id, ctx.family.name, seed);
            entry.params = {{"q", q}, {"rep", rep}, {"chain", chain.name}};
            run_cell(report, std::move(entry), [&](ReportEntry& e) {
                const CylinderFunctional F = draw_F(rng, ctx, 3);
                if (id == "thm5.1") {
                    set_outcome(e, collapse_equal_q(F, q, chain.kernels, itol.measure));
                } else {
                    std::vector<TransformSpec> specs;
                    nlohmann::ordered_json qs = nlohmann::ordered_json::array();
                    for (const KernelFn& h : chain.kernels) {
                        const double qj = q * random_q_multiplier(rng);
                        qs.push_back(qj);
                        specs.emplace_back(qj, h);
                    }
                    e.params["q_list"] = qs;
                    set_outcome(e, collapse_mixed_q(F, MixedChainSpec(std::move(specs)),
                                                    itol.measure));
                }
            });
        }
    }

    void run_rescale(const FamilyContext& ctx, double q, int rep) {
        static constexpr double betas[] = {0.25, 1.0, 4.0};
        const double beta = betas[rep % 3];
        const std::uint64_t seed = cell_seed("eq6.2", ctx.family.name, q, rep);
        SplitMix64 rng(seed);
        ReportEntry entry = base_entry("eq6.2", ctx.family.name, seed);
        entry.params = {{"q", q}, {"rep", rep}, {"beta", beta}};
        run_cell(report, std::move(entry), [&](ReportEntry& e) {
            const CylinderFunctional F = draw_F(rng, ctx, 3);
            const KernelFn& h = ctx.pool[rng.next_below(static_cast<int>(ctx.pool.size()))];
            set_outcome(e, rescale_parameter_check(F, q, h, beta, itol.measure));
        });
    }

    void run_grand(const FamilyContext& ctx, double q, int rep) {
        const std::uint64_t seed = cell_seed("thm6.3", ctx.family.name, q, rep);
        SplitMix64 rng(seed);
        ReportEntry entry = base_entry("thm6.3", ctx.family.name, seed);
        entry.params = {{"q", q}, {"rep", rep}};
        run_cell(report, std::move(entry), [&](ReportEntry& e) {
            auto draw_side = [&](std::span<const KernelFn> chain_pool) {
                GrandChainSide side;
                const int n = 1 + rng.next_below(3);
                nlohmann::ordered_json qs = nlohmann::ordered_json::array();
                for (int j = 0; j < n; ++j) {
                    side.kernels.push_back(
                        chain_pool[rng.next_below(static_cast<int>(chain_pool.size()))]);
                    side.qs.push_back(q * random_q_multiplier(rng));
                    qs.push_back(side.qs.back());
                }
                side.q_tail = q * random_q_multiplier(rng);
                qs.push_back(side.q_tail);
                return std::pair{side, qs};
            };
            auto [side1, qs1] = draw_side(ctx.family.factor_chain1);
            auto [side2, qs2] = draw_side(ctx.family.factor_chain2);
            e.params["q_list1"] = qs1;
            e.params["q_list2"] = qs2;

            // h constructed to satisfy h^2 = s(tau1 H1) s(tau2 H2)
            auto combined = [&](const GrandChainSide& side) {
                std::vector<KernelFn> scaled_kernels;
                const std::vector<double> taus = side.taus();
                for (std::size_t j = 0; j < taus.size(); ++j) {
                    scaled_kernels.push_back(scaled(side.kernels[j], taus[j]));
                }
                return s_combine(scaled_kernels);
            };
            const KernelFn s1 = combined(side1);
            const KernelFn s2 = combined(side2);
            std::vector<double> hv(grid.node_count());
            for (int i = 0; i < grid.node_count(); ++i) {
                hv[i] = std::sqrt(s1.values[i] * s2.values[i]);
            }
            const KernelFn h(grid, std::move(hv), "constructed");

            const CylinderFunctional F = draw_F(rng, ctx, 3);
            const CylinderFunctional G = draw_G(rng, ctx, 3);
            const auto paths = cell_paths(e.seed);
            set_outcome(e, verify_grand_identity(F, G, h, side1, side2, q, paths, itol));
        });
    }

    void run() {
        for (const std::string& fam_name : family_list()) {
            FamilyContext ctx{resolve_family(fam_name, grid, cfg.kernels), {}};
            ctx.pool = ctx.family.point_pool();
            for (double q : cfg.q_values) {
                for (int rep = 0; rep < effective_reps(); ++rep) {
                    if (enabled("cor3.3")) run_inverse(ctx, q, rep);
                    for (std::string_view id :
                         {"thm3.4", "thm3.6", "cor3.8", "cor3.9", "thm5.2", "thm5.3",
                          "lem6.2"}) {
                        if (enabled(id)) run_pair_identity(id, ctx, q, rep);
                    }
                    if (enabled("thm5.1")) run_collapse("thm5.1", ctx, q, rep);
                    if (enabled("thm6.1")) run_collapse("thm6.1", ctx, q, rep);
                    if (enabled("eq6.2")) run_rescale(ctx, q, rep);
                    if (enabled("thm6.3")) run_grand(ctx, q, rep);
                }
            }
        }
    }
};

} // namespace

VerificationReport run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    VerificationReport report;
    report.comparison_note = std::string(kComparisonNote);
    report.created_utc = current_utc();
    report.config = {{"command", "verify"},
                     {"grid_n", cfg.grid_n},
                     {"horizon", cfg.horizon},
                     {"families", cfg.families.empty() ? family_names() : cfg.families},
                     {"identities", cfg.identities.empty() ? known_identities()
                                                           : cfg.identities},
                     {"q_values", cfg.q_values},
                     {"n_paths", cfg.n_paths},
                     {"reps", cfg.reps},
                     {"seed", cfg.seed},
                     {"tolerances",
                      {{"hypothesis", cfg.tol.hypothesis},
                       {"measure", cfg.tol.measure},
                       {"pointwise", cfg.tol.pointwise},
                       {"merge", cfg.tol.merge},
                       {"drop", cfg.tol.drop}}}};

    SuiteRunner runner{cfg, cfg.identity_grid(), cfg.identity_tolerances(),
                       cfg.canonical_options(), report};
    runner.run();
    report.sort_entries();
    return report;
}

VerificationReport mc_check(const SuiteConfig& cfg) {
    cfg.validate();
    const Grid grid = cfg.mc_grid();
    VerificationReport report;
    report.comparison_note = std::string(kComparisonNote);
    report.created_utc = current_utc();
    report.config = {{"command", "mc-check"},
                     {"grid_n", cfg.mc_grid_n},
                     {"horizon", cfg.horizon},
                     {"families", cfg.families.empty() ? family_names() : cfg.families},
                     {"lambdas", cfg.lambdas},
                     {"n_samples", cfg.mc_samples},
                     {"seed", cfg.seed}};

    const std::vector<std::string> fams =
        cfg.families.empty() ? family_names() : cfg.families;
    for (const std::string& fam_name : fams) {
        const Family fam = resolve_family(fam_name, grid, cfg.kernels);
        const std::vector<KernelFn> pool = fam.point_pool();

        for (double lambda : cfg.lambdas) {
            const std::uint64_t seed =
                derive_seed(cfg.seed, "mc.closed-form/" + fam_name + "/lambda=" +
                                          fmt_double(lambda));
            SplitMix64 rng(seed);
            ReportEntry entry;
            entry.identity = "mc.closed-form";
            entry.family = fam_name;
            entry.seed = seed;
            entry.params = {{"lambda", lambda}, {"n_samples", cfg.mc_samples}};
            run_cell(report, std::move(entry), [&](ReportEntry& e) {
                const CylinderFunctional F =
                    random_functional(rng, pool, 3, cfg.canonical_options());
                const KernelFn& h = fam.set.h;
                const McConfig mc(grid, cfg.mc_samples, e.seed, {lambda});
                const McEstimate est = mc_generalized_wiener_integral(F, h, lambda, mc);
                const Complex exact = closed_form_wiener_integral(F, h, lambda);
                const double gap = std::abs(est.mean - exact);
                e.mc_std_error = est.std_error;
                e.measure_discrepancy = gap;
                e.status = gap <= 3.0 * est.std_error ? CellStatus::Pass
                                                      : CellStatus::StatFail;
                e.params["atoms"] = F.atom_count();
            });
        }

        const std::uint64_t vseed = derive_seed(cfg.seed, "mc.variance/" + fam_name);
        ReportEntry ventry;
        ventry.identity = "mc.variance";
        ventry.family = fam_name;
        ventry.seed = vseed;
        ventry.params = {{"n_samples", cfg.mc_samples},
                         {"h1", fam.set.h.family_tag},
                         {"h2", fam.set.k1.family_tag}};
        run_cell(report, std::move(ventry), [&](ReportEntry& e) {
            const McConfig mc(grid, cfg.mc_samples, e.seed, {1.0});
            const VarianceCheck check = check_variance_of_Zs(fam.set.h, fam.set.k1, mc);
            e.measure_discrepancy = std::abs(check.sample_variance - check.expected);
            e.mc_std_error = check.sigma;
            e.status = check.pass ? CellStatus::Pass : CellStatus::StatFail;
        });
    }
    report.sort_entries();
    return report;
}

std::string list_families_text(const Grid& grid, const std::vector<std::string>& filter) {
    std::ostringstream os;
    os << std::left << std::setw(16) << "family" << std::setw(12) << "residual(i)"
       << std::setw(13) << "residual(ii)" << std::setw(14) << "residual(iii)"
       << std::setw(6) << "pass" << "definition\n";
    const auto rows = list_families_json(grid, filter);
    for (const auto& row : rows) {
        os << std::left << std::setw(16) << row.at("name").get<std::string>()
           << std::scientific << std::setprecision(2) << std::setw(12)
           << row.at("residual_product").get<double>() << std::setw(13)
           << row.at("residual_s1").get<double>() << std::setw(14)
           << row.at("residual_s2").get<double>() << std::defaultfloat << std::setw(6)
           << (row.at("pass").get<bool>() ? "yes" : "no")
           << row.at("summary").get<std::string>() << "\n";
    }
    return os.str();
}

nlohmann::ordered_json list_families_json(const Grid& grid,
                                          const std::vector<std::string>& filter) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const std::string& name : family_names()) {
        if (!filter.empty() &&
            std::find(filter.begin(), filter.end(), name) == filter.end()) {
            continue;
        }
        const Family fam = make_family(name, grid);
        double scale = 1.0;
        for (const KernelFn* k : {&fam.set.h, &fam.set.k1, &fam.set.k2, &fam.set.s1,
                                  &fam.set.s2}) {
            scale = std::max(scale, max_abs_value(*k));
        }
        const SystemReport rep = check_system(fam.set, 1e-10 * scale);
        nlohmann::ordered_json row;
        row["name"] = name;
        row["summary"] = fam.summary;
        row["residual_product"] = rep.residual_product;
        row["residual_s1"] = rep.residual_s1;
        row["residual_s2"] = rep.residual_s2;
        row["tolerance"] = rep.tolerance;
        row["pass"] = rep.pass;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace wiener
