// shellrec: profile-based reconstruction of large-time wave fields.
// Subcommands run config-driven experiments and emit plot-ready CSV.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "shellrec/errors.hpp"
#include "shellrec/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out;
    int threads = 0;
    double quad_scale = 0.0;
};

void add_common(CLI::App* sub, CommonArgs* args) {
    sub->add_option("--config", args->config, "experiment config file (key = value lines)");
    sub->add_option("--out", args->out, "output CSV path (overrides config 'out')");
    sub->add_option("--threads", args->threads, "worker threads for (eps,k) cells");
    sub->add_option("--quad-scale", args->quad_scale,
                    "multiply quadrature resolutions by this factor");
}

shellrec::ExperimentConfig load_config(const CommonArgs& args) {
    auto cfg = args.config.empty() ? shellrec::ExperimentConfig::parse_string("", "<empty>")
                                   : shellrec::ExperimentConfig::parse_file(args.config);
    if (args.threads > 0) cfg.override_value("threads", std::to_string(args.threads));
    if (args.quad_scale > 0.0)
        cfg.override_value("quad_scale", shellrec::fmt17(args.quad_scale));
    return cfg;
}

std::string out_path(const CommonArgs& args, const shellrec::ExperimentConfig& cfg,
                     const std::string& fallback) {
    if (!args.out.empty()) return args.out;
    return cfg.get_string("out", fallback);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"profile-based shell reconstruction of wave solutions"};
    app.require_subcommand(1);

    CommonArgs converge_args, sp_args, fresnel_args, bench_args, recon_args;
    auto* conv = app.add_subcommand(
        "converge", "pointwise reconstruction error against the multiplier solution");
    add_common(conv, &converge_args);
    auto* sp = app.add_subcommand(
        "stationary-phase", "spherical stationary-phase functional over an N list");
    add_common(sp, &sp_args);
    auto* fr = app.add_subcommand(
        "fresnel", "oscillatory equator integral against the Fresnel limit");
    add_common(fr, &fresnel_args);
    auto* be = app.add_subcommand(
        "bench", "reconstruction cost versus the grid a direct solver would need");
    add_common(be, &bench_args);
    auto* re = app.add_subcommand(
        "reconstruct", "dump reconstructed shell samples along a ray");
    add_common(re, &recon_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    try {
        int rows = 0;
        std::string path;
        if (conv->parsed()) {
            const auto cfg = load_config(converge_args);
            path = out_path(converge_args, cfg, "converge.csv");
            rows = shellrec::run_converge(cfg, path);
        } else if (sp->parsed()) {
            const auto cfg = load_config(sp_args);
            path = out_path(sp_args, cfg, "stationary_phase.csv");
            rows = shellrec::run_stationary_phase(cfg, path);
        } else if (fr->parsed()) {
            const auto cfg = load_config(fresnel_args);
            path = out_path(fresnel_args, cfg, "fresnel.csv");
            rows = shellrec::run_fresnel(cfg, path);
        } else if (be->parsed()) {
            const auto cfg = load_config(bench_args);
            path = out_path(bench_args, cfg, "bench.csv");
            rows = shellrec::run_bench(cfg, path);
        } else if (re->parsed()) {
            const auto cfg = load_config(recon_args);
            path = out_path(recon_args, cfg, "reconstruct.csv");
            rows = shellrec::run_reconstruct(cfg, path);
        }
        std::fprintf(stderr, "wrote %d rows to %s\n", rows, path.c_str());
        return 0;
    } catch (const shellrec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const shellrec::ResolutionError& e) {
        std::fprintf(stderr, "resolution error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
