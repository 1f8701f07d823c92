// Command-line front end: single runs, sweeps, the verification suite, and
// the gauge / equivalence / Bona-Smith studies.

#include "kdnls/commands.hpp"
#include "kdnls/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw kdnls::ConfigInvalid("(file)", "cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw kdnls::ConfigInvalid("(file)", std::string("parse error: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral KDNLS simulator and verification harness"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    std::string out_dir = "runs";
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;

    app.add_option("--config", config_path, "config file (JSON)");
    app.add_option("--out", out_dir, "output directory (default: runs)");
    app.add_option("--threads", threads, "worker threads for sweeps");
    app.add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });

    auto* run = app.add_subcommand("run", "execute one configured run");
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    auto* verify = app.add_subcommand("verify", "built-in invariant suite");
    auto* gauge = app.add_subcommand("gauge-check", "gauge-equation residuals");
    auto* equiv = app.add_subcommand("equivalence",
                                     "renormalization/translation equivalence");
    auto* bona = app.add_subcommand("bona-smith", "regularization convergence study");
    auto* report = app.add_subcommand("report", "summarize a run directory");
    std::string report_dir;
    report->add_option("run_dir", report_dir, "run directory")->required();

    CLI11_PARSE(app, argc, argv);

    kdnls::CommandContext ctx;
    if (const char* env = std::getenv("KDNLS_OUT"))
        ctx.out_dir = env; // env wins over --out
    else
        ctx.out_dir = out_dir;
    ctx.threads = threads;
    if (seed_given) ctx.seed_override = seed;

    try {
        if (verify->parsed()) return kdnls::cmd_verify(ctx);
        if (report->parsed()) return kdnls::cmd_report(report_dir, ctx);
        if (config_path.empty())
            throw kdnls::ConfigInvalid("(file)", "--config is required");
        const nlohmann::json doc = load_config(config_path);
        if (run->parsed()) return kdnls::cmd_run(doc, ctx);
        if (sweep->parsed()) return kdnls::cmd_sweep(doc, ctx);
        if (gauge->parsed()) return kdnls::cmd_gauge_check(doc, ctx);
        if (equiv->parsed()) return kdnls::cmd_equivalence(doc, ctx);
        if (bona->parsed()) return kdnls::cmd_bona_smith(doc, ctx);
    } catch (const kdnls::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kdnls::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kdnls::kExitConfigError;
    }
    return kdnls::kExitOk;
}
