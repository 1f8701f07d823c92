#include "kdnls/product.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/fft.hpp"
#include "kdnls/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace kdnls {

namespace {

// Scatter N-grid coefficients into an M-grid spectral array (M >= N), zero
// elsewhere; modes keep their wavenumbers.
void embed(std::span<const cd> src, int n, std::span<cd> dst, int m) {
    std::fill(dst.begin(), dst.end(), cd(0.0));
    for (int k = 0; k < n; ++k) {
        const int mode = k < n / 2 ? k : k - n;
        const int kk = mode >= 0 ? mode : mode + m;
        dst[static_cast<size_t>(kk)] = src[static_cast<size_t>(k)];
    }
}

// Gather the [-N/2, N/2-1] window from an M-grid spectral array.
std::vector<cd> window(std::span<const cd> src, int m, int n) {
    std::vector<cd> out(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int mode = k < n / 2 ? k : k - n;
        const int kk = mode >= 0 ? mode : mode + m;
        out[static_cast<size_t>(k)] = src[static_cast<size_t>(kk)];
    }
    return out;
}

int padded_size(int n, int factor_num, int factor_den) {
    return n * factor_num / factor_den;
}

Field binary_product(const Field& a, const Field& b, int m) {
    const GridSpec& g = a.grid();
    const int n = g.num_modes();
    std::vector<cd> sa(static_cast<size_t>(m)), sb(static_cast<size_t>(m));
    std::vector<cd> pa(static_cast<size_t>(m)), pb(static_cast<size_t>(m));
    embed(a.spectral(), n, sa, m);
    embed(b.spectral(), n, sb, m);
    fft::inverse(sa, pa);
    fft::inverse(sb, pb);
    kernels::cmul(pa.data(), pb.data(), pa.data(), pa.size());
    fft::forward(pa, sa);
    return Field::from_spectral(g, window(sa, m, n));
}

} // namespace

bool dealiasing_disabled() {
    static const bool disabled = std::getenv("KDNLS_DISABLE_DEALIASING") != nullptr;
    return disabled;
}

Field dealiased_product(const Field& a, const Field& b) {
    require_same_grid(a, b);
    const int n = a.grid().num_modes();
    const int m = dealiasing_disabled() ? n : padded_size(n, 3, 2);
    return binary_product(a, b, m);
}

Field dealiased_product(std::span<const Field> factors) {
    if (factors.size() < 2 || factors.size() > 5)
        throw std::invalid_argument("dealiased_product: need 2..5 factors");
    for (size_t i = 1; i < factors.size(); ++i)
        require_same_grid(factors[0], factors[i]);
    Field acc = dealiased_product(factors[0], factors[1]);
    for (size_t i = 2; i < factors.size(); ++i)
        acc = dealiased_product(acc, factors[i]);
    return acc;
}

Field dealiased_product(const Field& a, const Field& b, const Field& c) {
    const Field f[] = {a, b, c};
    return dealiased_product(std::span<const Field>(f, 3));
}

Field abs_squared(const Field& u) { return dealiased_product(u, u.conjugate()); }

Field exact_triple_product(const Field& a, const Field& b, const Field& c) {
    require_same_grid(a, b);
    require_same_grid(a, c);
    const GridSpec& g = a.grid();
    const int n = g.num_modes();
    const int m = 4 * n; // total support 3(N-1) < M/2 + window: alias-free
    std::vector<cd> spec(static_cast<size_t>(m)), phys(static_cast<size_t>(m));
    std::vector<cd> acc(static_cast<size_t>(m));
    embed(a.spectral(), n, spec, m);
    fft::inverse(spec, acc);
    embed(b.spectral(), n, spec, m);
    fft::inverse(spec, phys);
    kernels::cmul(acc.data(), phys.data(), acc.data(), acc.size());
    embed(c.spectral(), n, spec, m);
    fft::inverse(spec, phys);
    kernels::cmul(acc.data(), phys.data(), acc.data(), acc.size());
    fft::forward(acc, spec);
    return Field::from_spectral(g, window(spec, m, n));
}

Field map_on_padded_grid(const Field& u, const std::function<cd(cd)>& f) {
    const GridSpec& g = u.grid();
    const int n = g.num_modes();
    const int m = padded_size(n, 3, 2);
    std::vector<cd> spec(static_cast<size_t>(m)), phys(static_cast<size_t>(m));
    embed(u.spectral(), n, spec, m);
    fft::inverse(spec, phys);
    for (auto& v : phys) v = f(v);
    fft::forward(phys, spec);
    return Field::from_spectral(g, window(spec, m, n));
}

} // namespace kdnls
