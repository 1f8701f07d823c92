#include "kdnls/norms.hpp"

#include "kdnls/kernels.hpp"

#include <cmath>

namespace kdnls {

double sobolev_norm(const Field& u, double s) {
    const GridSpec& g = u.grid();
    const int n = g.num_modes();
    std::vector<double> w(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double nn = static_cast<double>(g.mode_of(k));
        w[static_cast<size_t>(k)] = std::pow(1.0 + nn * nn, s);
    }
    return std::sqrt(kTwoPi *
                     kernels::weighted_norm2(w.data(), u.spectral().data(),
                                             u.spectral().size()));
}

double l2_norm(const Field& u) {
    return std::sqrt(kTwoPi * kernels::norm2(u.spectral().data(),
                                             u.spectral().size()));
}

double mean_intensity(const Field& u) {
    return kernels::norm2(u.spectral().data(), u.spectral().size());
}

double sup_norm(const Field& u) {
    double m = 0.0;
    for (const cd& v : u.to_physical()) m = std::max(m, std::abs(v));
    return m;
}

double tail_fraction(const Field& u, int cutoff, double s) {
    const GridSpec& g = u.grid();
    const int n = g.num_modes();
    double tail = 0.0, total = 0.0;
    for (int k = 0; k < n; ++k) {
        const int mode = g.mode_of(k);
        const double nn = static_cast<double>(mode);
        const double w = std::pow(1.0 + nn * nn, s);
        const cd c = u.spectral()[static_cast<size_t>(k)];
        const double e = w * std::norm(c);
        total += e;
        if (std::abs(mode) > cutoff) tail += e;
    }
    if (total == 0.0) return 0.0;
    return std::sqrt(tail / total);
}

} // namespace kdnls
