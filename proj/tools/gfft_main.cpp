#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wiener/io.hpp"
#include "wiener/suite.hpp"

namespace {

constexpr int kConfigErrorExit = 3;

struct OutputOptions {
    std::string out_path;
    std::string format = "text";
};

void add_common_flags(CLI::App* cmd, wiener::SuiteConfig& cfg, OutputOptions& out) {
    cmd->add_option("--grid-n", cfg.grid_n, "grid panels (even)")->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", cfg.horizon, "time horizon T")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", cfg.seed, "master seed (overrides GFFT_SEED)");
    cmd->add_option("--out", out.out_path, "write the report to this path");
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
}

void apply_env_seed(wiener::SuiteConfig& cfg, const CLI::App* cmd) {
    if (cmd->count("--seed") > 0) return;
    if (const char* env = std::getenv("GFFT_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
    }
}

int emit_report(const wiener::VerificationReport& report, const OutputOptions& out) {
    const std::string body = out.format == "json" ? report.to_json().dump(2) + "\n"
                                                  : report.to_text();
    if (!out.out_path.empty()) {
        std::ofstream f(out.out_path);
        if (!f) {
            std::cerr << "cannot write " << out.out_path << "\n";
            return kConfigErrorExit;
        }
        // the file always receives the JSON document; the console gets the
        // requested format
        f << report.to_json().dump(2) << "\n";
    }
    std::cout << body;
    return report.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Fourier-Feynman transform / convolution identity verifier"};
    app.require_subcommand(1);

    wiener::SuiteConfig cfg;
    OutputOptions out;
    std::string kernels_path;
    std::vector<std::string> functional_paths;

    CLI::App* verify = app.add_subcommand(
        "verify", "run the identity suites over families x q values");
    add_common_flags(verify, cfg, out);
    verify->add_option("--q", cfg.q_values, "transform parameters (nonzero)");
    verify->add_option("--identities", cfg.identities, "subset of identities to run");
    verify->add_option("--families", cfg.families, "subset of kernel families");
    verify->add_option("--paths", cfg.n_paths, "sample paths per pointwise check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--reps", cfg.reps, "randomized functional draws per cell")
        ->check(CLI::PositiveNumber);
    verify->add_option("--hypothesis-tol", cfg.tol.hypothesis,
                       "relative tolerance for identity hypotheses");
    verify->add_option("--tol", cfg.tol.measure, "measure equality tolerance");
    verify->add_option("--pointwise-tol", cfg.tol.pointwise,
                       "relative pointwise tolerance");
    verify->add_option("--kernels", kernels_path, "kernel definition file");
    verify
        ->add_option("--functional", functional_paths,
                     "functional definition file (first = F, second = G)")
        ->expected(0, 2);

    CLI::App* mc = app.add_subcommand(
        "mc-check", "Monte Carlo Wiener-integral oracle vs closed forms");
    add_common_flags(mc, cfg, out);
    mc->add_option("--samples", cfg.mc_samples, "Monte Carlo samples per cell")
        ->check(CLI::PositiveNumber);
    mc->add_option("--lambda", cfg.lambdas, "positive lambda values");
    mc->add_option("--families", cfg.families, "subset of kernel families");

    CLI::App* families = app.add_subcommand("families", "list built-in kernel families");
    add_common_flags(families, cfg, out);
    families->add_option("--families", cfg.families, "name filter");

    CLI::App* show = app.add_subcommand("report", "render a saved JSON report");
    std::string report_path;
    show->add_option("path", report_path, "report file")->required();
    show->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            apply_env_seed(cfg, verify);
            const wiener::Grid grid = cfg.identity_grid();
            if (!kernels_path.empty()) {
                cfg.kernels = wiener::load_kernel_file(kernels_path, grid);
            }
            const wiener::KernelLibrary* lib = cfg.kernels ? &*cfg.kernels : nullptr;
            if (!functional_paths.empty()) {
                cfg.fixed_F = wiener::load_functional_file(functional_paths[0], lib, grid);
            }
            if (functional_paths.size() > 1) {
                cfg.fixed_G = wiener::load_functional_file(functional_paths[1], lib, grid);
            }
            return emit_report(wiener::run_suite(cfg), out);
        }
        if (mc->parsed()) {
            apply_env_seed(cfg, mc);
            if (mc->count("--grid-n") > 0) cfg.mc_grid_n = cfg.grid_n;
            return emit_report(wiener::mc_check(cfg), out);
        }
        if (families->parsed()) {
            const wiener::Grid grid = cfg.identity_grid();
            if (out.format == "json") {
                std::cout << wiener::list_families_json(grid, cfg.families).dump(2) << "\n";
            } else {
                std::cout << wiener::list_families_text(grid, cfg.families);
            }
            return 0;
        }
        if (show->parsed()) {
            std::ifstream in(report_path);
            if (!in) {
                std::cerr << "cannot open " << report_path << "\n";
                return kConfigErrorExit;
            }
            nlohmann::ordered_json j;
            in >> j;
            const wiener::VerificationReport report = wiener::VerificationReport::from_json(j);
            if (out.format == "json") {
                std::cout << report.to_json().dump(2) << "\n";
            } else {
                std::cout << report.to_text();
            }
            return report.exit_code();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigErrorExit;
    }
    return kConfigErrorExit;
}
