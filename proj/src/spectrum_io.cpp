#include "kdnls/spectrum_io.hpp"

#include "kdnls/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace kdnls {

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p += ".json";
    return p;
}

} // namespace

void write_spectrum_csv(const Field& u, const std::filesystem::path& csv_path,
                        double time) {
    std::ofstream out(csv_path);
    if (!out) throw Error("cannot open " + csv_path.string() + " for writing");
    out << "n,re,im\n";
    char buf[96];
    const GridSpec& g = u.grid();
    for (int n = g.min_mode(); n <= g.max_mode(); ++n) {
        const cd c = u.mode(n);
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", n, c.real(), c.imag());
        out << buf;
    }
    nlohmann::json side = {
        {"N", g.num_modes()},
        {"convention", "exp(inx)/2pi"},
        {"time", time},
    };
    std::ofstream sc(sidecar_path(csv_path));
    if (!sc) throw Error("cannot open sidecar for " + csv_path.string());
    sc << side.dump(2) << "\n";
}

Field read_spectrum_csv(const std::filesystem::path& csv_path, double* time_out) {
    std::ifstream sc(sidecar_path(csv_path));
    if (!sc) throw Error("missing sidecar for " + csv_path.string());
    nlohmann::json side = nlohmann::json::parse(sc);
    const int n = side.at("N").get<int>();
    if (side.at("convention").get<std::string>() != "exp(inx)/2pi")
        throw Error("unsupported spectrum convention in " + csv_path.string());
    if (time_out) *time_out = side.at("time").get<double>();

    GridSpec g(n);
    std::vector<cd> spec(static_cast<size_t>(n));
    std::ifstream in(csv_path);
    if (!in) throw Error("cannot open " + csv_path.string());
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        const int mode = std::stoi(tok);
        std::getline(ss, tok, ',');
        const double re = std::stod(tok);
        std::getline(ss, tok, ',');
        const double im = std::stod(tok);
        if (mode < g.min_mode() || mode > g.max_mode())
            throw Error("spectrum row outside grid in " + csv_path.string());
        spec[static_cast<size_t>(g.index_of(mode))] = cd(re, im);
    }
    return Field::from_spectral(g, std::move(spec));
}

} // namespace kdnls
