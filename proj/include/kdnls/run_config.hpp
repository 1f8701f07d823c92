#pragma once

#include "kdnls/dynamics.hpp"
#include "kdnls/field.hpp"
#include "kdnls/integrator.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace kdnls {

using json = nlohmann::json;

/// Fully validated run description. Parsing is strict: unknown keys anywhere
/// in the document raise ConfigInvalid with the offending field path.
struct RunConfig {
    int num_modes = 128;
    double alpha = 0.0;
    double beta = 0.0;
    double epsilon = 0.0;
    RhsKind kind = RhsKind::original;
    SolverConfig solver;
    json initial;          // validated preset / spectrum-file block
    std::uint64_t seed = 0;
    int snapshot_write_stride = 1; // persistence thinning; memory keeps all

    json canonical() const; // the normalized document the run id hashes
};

RhsKind parse_rhs_kind(const std::string& name, const std::string& path);
std::string rhs_kind_name(RhsKind kind);

/// Parse and validate the "run" portion of a config document (sections grid,
/// equation, solver, initial, seed, output). Extra sections may be listed in
/// `extra_sections` (validated by their own commands).
RunConfig parse_run_config(const json& doc,
                           std::initializer_list<std::string> extra_sections = {});

/// Construct the initial datum described by a validated `initial` block.
Field build_initial_datum(const GridSpec& g, const json& initial,
                          std::uint64_t seed);

/// Equation parameters with renorm_c0 and mu frozen from the datum.
EquationParams derive_params(const RunConfig& cfg, const Field& phi);

// Strict-schema helpers shared by the command parsers.
void require_object(const json& j, const std::string& path);
void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed);
double get_number(const json& j, const std::string& path, const char* key,
                  double fallback, bool required = false);
int get_integer(const json& j, const std::string& path, const char* key,
                int fallback, bool required = false);

} // namespace kdnls
