#pragma once

#include "kdnls/integrator.hpp"
#include "kdnls/run_config.hpp"

#include <filesystem>
#include <string>

namespace kdnls {

/// 64-bit FNV-1a of the canonical config bytes, as a hex string; reproducible
/// across platforms by construction.
std::string run_id_for(const json& canonical_config);

enum class RunStatus { completed, blowup, error };
std::string run_status_name(RunStatus s);

struct RunManifest {
    std::string run_id;
    std::string created_at; // ISO-8601 UTC
    RunStatus status = RunStatus::error;
    json config;       // the canonical config
    json params;       // derived equation parameters (renorm_c0, mu included)
    std::string code_version;
    int snapshots = 0;
    double final_time = 0.0;

    json to_json() const;
};

/// Persist a completed (or truncated) trajectory as a run directory:
/// manifest.json, snapshots/snap_######.csv(+.json sidecars),
/// diagnostics.csv, plot_diagnostics.py. The directory is assembled under a
/// temporary name and atomically renamed into place, so failures never
/// corrupt existing runs. Returns the final directory.
std::filesystem::path persist_run(const std::filesystem::path& out_dir,
                                  const RunManifest& manifest,
                                  const Trajectory& traj,
                                  int snapshot_write_stride);

std::string current_timestamp_utc();
std::string code_version();

} // namespace kdnls
