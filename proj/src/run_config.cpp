#include "kdnls/run_config.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/spectrum_io.hpp"

#include <cmath>
#include <random>
#include <set>

namespace kdnls {

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigInvalid(path, "expected an object");
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    require_object(j, path);
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) throw ConfigInvalid(path + "." + key, "unknown key");
}

double get_number(const json& j, const std::string& path, const char* key,
                  double fallback, bool required) {
    if (!j.contains(key)) {
        if (required) throw ConfigInvalid(path + "." + key, "missing");
        return fallback;
    }
    if (!j.at(key).is_number())
        throw ConfigInvalid(path + "." + key, "expected a number");
    return j.at(key).get<double>();
}

int get_integer(const json& j, const std::string& path, const char* key,
                int fallback, bool required) {
    if (!j.contains(key)) {
        if (required) throw ConfigInvalid(path + "." + key, "missing");
        return fallback;
    }
    if (!j.at(key).is_number_integer())
        throw ConfigInvalid(path + "." + key, "expected an integer");
    return j.at(key).get<int>();
}

RhsKind parse_rhs_kind(const std::string& name, const std::string& path) {
    if (name == "original") return RhsKind::original;
    if (name == "renormalized") return RhsKind::renormalized;
    if (name == "regularized") return RhsKind::regularized;
    throw ConfigInvalid(path, "expected original | renormalized | regularized");
}

std::string rhs_kind_name(RhsKind kind) {
    switch (kind) {
    case RhsKind::original: return "original";
    case RhsKind::renormalized: return "renormalized";
    case RhsKind::regularized: return "regularized";
    }
    return "?";
}

namespace {

void validate_initial(const json& initial) {
    const std::string path = "initial";
    require_object(initial, path);
    if (initial.contains("spectrum_file")) {
        check_keys(initial, path, {"spectrum_file"});
        if (!initial.at("spectrum_file").is_string())
            throw ConfigInvalid(path + ".spectrum_file", "expected a string");
        return;
    }
    if (!initial.contains("preset"))
        throw ConfigInvalid(path, "need either preset or spectrum_file");
    const std::string preset = initial.at("preset").get<std::string>();
    if (preset == "constant") {
        check_keys(initial, path, {"preset", "amplitude"});
    } else if (preset == "plane_wave") {
        check_keys(initial, path, {"preset", "amplitude", "mode"});
    } else if (preset == "two_mode") {
        check_keys(initial, path, {"preset"});
    } else if (preset == "mode_sum") {
        check_keys(initial, path, {"preset", "modes", "coefficients"});
        if (!initial.contains("modes") || !initial.contains("coefficients") ||
            initial.at("modes").size() != initial.at("coefficients").size())
            throw ConfigInvalid(path, "modes and coefficients must match in length");
    } else if (preset == "random_smooth") {
        check_keys(initial, path, {"preset", "bandwidth", "decay", "amplitude"});
    } else if (preset == "rough") {
        check_keys(initial, path, {"preset", "decay", "amplitude"});
    } else if (preset == "analytic") {
        check_keys(initial, path, {"preset", "ratio", "amplitude"});
    } else {
        throw ConfigInvalid(path + ".preset", "unknown preset '" + preset + "'");
    }
}

} // namespace

RunConfig parse_run_config(const json& doc,
                           std::initializer_list<std::string> extra_sections) {
    require_object(doc, "(root)");
    std::set<std::string> allowed = {"grid", "equation", "solver",
                                     "initial", "seed", "output"};
    for (const auto& s : extra_sections) allowed.insert(s);
    for (const auto& [key, value] : doc.items())
        if (!allowed.count(key)) throw ConfigInvalid(key, "unknown key");

    RunConfig cfg;

    const json& grid = doc.contains("grid") ? doc.at("grid") : json::object();
    check_keys(grid, "grid", {"num_modes"});
    cfg.num_modes = get_integer(grid, "grid", "num_modes", 128, true);
    if (cfg.num_modes < 8 || (cfg.num_modes & (cfg.num_modes - 1)) != 0)
        throw ConfigInvalid("grid.num_modes", "must be a power of two >= 8");

    const json& eq = doc.contains("equation") ? doc.at("equation") : json::object();
    check_keys(eq, "equation", {"alpha", "beta", "epsilon", "kind"});
    cfg.alpha = get_number(eq, "equation", "alpha", 0.0);
    cfg.beta = get_number(eq, "equation", "beta", 0.0);
    cfg.epsilon = get_number(eq, "equation", "epsilon", 0.0);
    if (cfg.beta > 0.0) throw ConfigInvalid("equation.beta", "must be <= 0");
    if (cfg.epsilon < 0.0) throw ConfigInvalid("equation.epsilon", "must be >= 0");
    cfg.kind = parse_rhs_kind(eq.contains("kind") ? eq.at("kind").get<std::string>()
                                                  : "original",
                              "equation.kind");
    if (cfg.kind == RhsKind::regularized && cfg.epsilon <= 0.0)
        throw ConfigInvalid("equation.epsilon", "regularized runs need epsilon > 0");

    if (!doc.contains("solver")) throw ConfigInvalid("solver", "missing");
    const json& sol = doc.at("solver");
    check_keys(sol, "solver",
               {"dt", "t_final", "scheme", "snapshot_stride",
                "residual_stencil_h", "norm_s"});
    cfg.solver.dt = get_number(sol, "solver", "dt", 0.0, true);
    cfg.solver.t_final = get_number(sol, "solver", "t_final", 0.0, true);
    cfg.solver.snapshot_stride = get_integer(sol, "solver", "snapshot_stride", 1);
    cfg.solver.residual_stencil_h =
        get_number(sol, "solver", "residual_stencil_h", cfg.solver.dt);
    cfg.solver.norm_s = get_number(sol, "solver", "norm_s", 2.0);
    if (sol.contains("scheme") && sol.at("scheme").get<std::string>() != "lawson_rk4")
        throw ConfigInvalid("solver.scheme", "only lawson_rk4 is available");
    cfg.solver.validate();

    if (!doc.contains("initial")) throw ConfigInvalid("initial", "missing");
    cfg.initial = doc.at("initial");
    validate_initial(cfg.initial);

    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer())
            throw ConfigInvalid("seed", "expected an unsigned integer");
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }

    const json& out = doc.contains("output") ? doc.at("output") : json::object();
    check_keys(out, "output", {"snapshot_write_stride"});
    cfg.snapshot_write_stride = get_integer(out, "output", "snapshot_write_stride", 1);
    if (cfg.snapshot_write_stride < 1)
        throw ConfigInvalid("output.snapshot_write_stride", "must be >= 1");

    return cfg;
}

json RunConfig::canonical() const {
    return json{
        {"grid", {{"num_modes", num_modes}}},
        {"equation",
         {{"alpha", alpha}, {"beta", beta}, {"epsilon", epsilon},
          {"kind", rhs_kind_name(kind)}}},
        {"solver",
         {{"dt", solver.dt},
          {"t_final", solver.t_final},
          {"scheme", "lawson_rk4"},
          {"snapshot_stride", solver.snapshot_stride},
          {"residual_stencil_h", solver.residual_stencil_h},
          {"norm_s", solver.norm_s}}},
        {"initial", initial},
        {"seed", seed},
        {"output", {{"snapshot_write_stride", snapshot_write_stride}}},
    };
}

namespace {

// Phase depends only on (seed, mode), so one seed names one function
// regardless of the grid it is sampled on; sweeps across N stay comparable.
double phase_for(std::uint64_t seed, int mode) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ull *
                              static_cast<std::uint64_t>(mode + (1 << 20)));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    return kTwoPi * static_cast<double>(z >> 11) * 0x1.0p-53;
}

} // namespace

Field build_initial_datum(const GridSpec& g, const json& initial,
                          std::uint64_t seed) {
    if (initial.contains("spectrum_file"))
        return read_spectrum_csv(initial.at("spectrum_file").get<std::string>());

    const std::string preset = initial.at("preset").get<std::string>();
    auto phase = [&](int mode) { return phase_for(seed, mode); };

    if (preset == "constant") {
        const double a = get_number(initial, "initial", "amplitude", 1.0);
        return Field::from_modes(g, {{0, cd(a, 0.0)}});
    }
    if (preset == "plane_wave") {
        const double a = get_number(initial, "initial", "amplitude", 1.0);
        const int n = get_integer(initial, "initial", "mode", 1);
        if (n < g.min_mode() || n > g.max_mode())
            throw ConfigInvalid("initial.mode", "outside the grid");
        return Field::from_modes(g, {{n, cd(a, 0.0)}});
    }
    if (preset == "two_mode")
        return Field::from_modes(g, {{1, cd(1.0, 0.0)}, {2, cd(0.5, 0.0)}});
    if (preset == "mode_sum") {
        std::vector<cd> spec(static_cast<size_t>(g.num_modes()));
        const auto& modes = initial.at("modes");
        const auto& coeffs = initial.at("coefficients");
        for (size_t i = 0; i < modes.size(); ++i) {
            const int n = modes[i].get<int>();
            if (n < g.min_mode() || n > g.max_mode())
                throw ConfigInvalid("initial.modes", "mode outside the grid");
            const auto& c = coeffs[i];
            spec[static_cast<size_t>(g.index_of(n))] =
                cd(c.at(0).get<double>(), c.at(1).get<double>());
        }
        return Field::from_spectral(g, std::move(spec));
    }
    if (preset == "random_smooth") {
        const int bw = get_integer(initial, "initial", "bandwidth", g.num_modes() / 8);
        const double decay = get_number(initial, "initial", "decay", 2.0);
        const double amp = get_number(initial, "initial", "amplitude", 1.0);
        if (bw < 1 || bw > g.max_mode())
            throw ConfigInvalid("initial.bandwidth", "outside the grid");
        std::vector<cd> spec(static_cast<size_t>(g.num_modes()));
        for (int n = -bw; n <= bw; ++n) {
            const double mag = amp * std::pow(1.0 + static_cast<double>(n) * n,
                                              -decay / 2.0);
            const double th = phase(n);
            spec[static_cast<size_t>(g.index_of(n))] =
                mag * cd(std::cos(th), std::sin(th));
        }
        return Field::from_spectral(g, std::move(spec));
    }
    if (preset == "rough" || preset == "analytic") {
        const double amp = get_number(initial, "initial", "amplitude", 1.0);
        std::vector<cd> spec(static_cast<size_t>(g.num_modes()));
        for (int n = g.min_mode() + 1; n <= g.max_mode(); ++n) {
            double mag;
            if (preset == "rough") {
                const double decay = get_number(initial, "initial", "decay", 2.51);
                mag = amp * std::pow(1.0 + static_cast<double>(n) * n, -decay / 2.0);
            } else {
                const double q = get_number(initial, "initial", "ratio", 0.7);
                mag = amp * std::pow(q, std::abs(n));
            }
            const double th = phase(n);
            spec[static_cast<size_t>(g.index_of(n))] =
                mag * cd(std::cos(th), std::sin(th));
        }
        return Field::from_spectral(g, std::move(spec));
    }
    throw ConfigInvalid("initial.preset", "unknown preset");
}

EquationParams derive_params(const RunConfig& cfg, const Field& phi) {
    return EquationParams::for_datum(cfg.alpha, cfg.beta, cfg.epsilon, phi);
}

} // namespace kdnls
