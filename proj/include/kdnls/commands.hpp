#pragma once

#include "kdnls/manifest.hpp"
#include "kdnls/run_config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace kdnls {

/// Process-wide exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitBlowup = 2;
inline constexpr int kExitVerifyFailure = 3;

struct CommandContext {
    std::filesystem::path out_dir = "runs";
    int threads = 1;
    std::optional<std::uint64_t> seed_override;
    std::ostream* log = nullptr; // defaults to std::cout
};

int cmd_run(const json& doc, const CommandContext& ctx);
int cmd_equivalence(const json& doc, const CommandContext& ctx);
int cmd_gauge_check(const json& doc, const CommandContext& ctx);
int cmd_bona_smith(const json& doc, const CommandContext& ctx);
int cmd_sweep(const json& doc, const CommandContext& ctx);
int cmd_verify(const CommandContext& ctx);
int cmd_report(const std::filesystem::path& run_dir, const CommandContext& ctx);

/// Shared by cmd_run and the orchestration commands: execute one validated
/// config and persist the run directory.
struct RunOutcome {
    RunManifest manifest;
    Trajectory trajectory;
    std::filesystem::path directory;
};
RunOutcome execute_run(const RunConfig& cfg, const CommandContext& ctx,
                       bool persist = true);

} // namespace kdnls
