#include "kdnls/manifest.hpp"

#include "kdnls/diagnostics.hpp"
#include "kdnls/errors.hpp"
#include "kdnls/spectrum_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <unistd.h>

#ifndef KDNLS_CODE_VERSION
#define KDNLS_CODE_VERSION "unknown"
#endif

namespace kdnls {

namespace fs = std::filesystem;

std::string run_id_for(const json& canonical_config) {
    const std::string bytes = canonical_config.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string run_status_name(RunStatus s) {
    switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup: return "blowup";
    case RunStatus::error: return "error";
    }
    return "?";
}

std::string current_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string code_version() { return KDNLS_CODE_VERSION; }

json RunManifest::to_json() const {
    return json{
        {"run_id", run_id},
        {"created_at", created_at},
        {"status", run_status_name(status)},
        {"config", config},
        {"params", params},
        {"grid", {{"num_modes", config.at("grid").at("num_modes")}}},
        {"code_version", code_version},
        {"snapshots", snapshots},
        {"final_time", final_time},
    };
}

fs::path persist_run(const fs::path& out_dir, const RunManifest& manifest,
                     const Trajectory& traj, int snapshot_write_stride) {
    fs::create_directories(out_dir);
    const fs::path final_dir = out_dir / manifest.run_id;
    const fs::path tmp_dir =
        out_dir / (".tmp-" + manifest.run_id + "-" +
                   std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(tmp_dir / "snapshots");

    {
        std::ofstream mf(tmp_dir / "manifest.json");
        mf << manifest.to_json().dump(2) << "\n";
    }
    char name[64];
    for (size_t k = 0; k < traj.times.size();
         k += static_cast<size_t>(snapshot_write_stride)) {
        std::snprintf(name, sizeof(name), "snap_%06zu.csv", k);
        write_spectrum_csv(traj.states[k], tmp_dir / "snapshots" / name,
                           traj.times[k]);
    }
    if (!traj.times.empty()) { // always include the final state
        const size_t last = traj.times.size() - 1;
        std::snprintf(name, sizeof(name), "snap_%06zu.csv", last);
        if (!fs::exists(tmp_dir / "snapshots" / name))
            write_spectrum_csv(traj.states[last], tmp_dir / "snapshots" / name,
                               traj.times[last]);
    }
    {
        std::ofstream diag(tmp_dir / "diagnostics.csv");
        write_diagnostics_csv(traj, diag);
    }
    {
        std::ofstream script(tmp_dir / "plot_diagnostics.py");
        write_plot_script((final_dir / "diagnostics.csv").string(), script);
    }

    if (fs::exists(final_dir)) fs::remove_all(final_dir);
    fs::rename(tmp_dir, final_dir);
    return final_dir;
}

} // namespace kdnls
