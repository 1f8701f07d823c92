#include "kdnls/field.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/fft.hpp"
#include "kdnls/kernels.hpp"

#include <stdexcept>

namespace kdnls {

Field Field::from_spectral(const GridSpec& g, std::vector<cd> coeffs) {
    if (coeffs.size() != static_cast<size_t>(g.num_modes()))
        throw std::invalid_argument("from_spectral: coefficient count != num_modes");
    return Field(g, std::move(coeffs), nullptr);
}

Field Field::from_physical(const GridSpec& g, std::vector<cd> samples) {
    if (samples.size() != static_cast<size_t>(g.num_modes()))
        throw std::invalid_argument("from_physical: sample count != num_modes");
    std::vector<cd> spec(samples.size());
    fft::forward(samples, spec);
    auto phys = std::make_shared<const std::vector<cd>>(std::move(samples));
    return Field(g, std::move(spec), std::move(phys));
}

Field Field::from_modes(const GridSpec& g,
                        std::initializer_list<std::pair<int, cd>> modes) {
    std::vector<cd> spec(static_cast<size_t>(g.num_modes()));
    for (const auto& [n, c] : modes) {
        if (n < g.min_mode() || n > g.max_mode())
            throw std::invalid_argument("from_modes: mode outside grid");
        spec[static_cast<size_t>(g.index_of(n))] = c;
    }
    return Field(g, std::move(spec), nullptr);
}

std::vector<cd> Field::to_physical() const {
    if (phys_) return *phys_;
    std::vector<cd> samples(spec_.size());
    fft::inverse(spec_, samples);
    return samples;
}

Field Field::with_physical() const {
    if (phys_) return *this;
    auto phys = std::make_shared<const std::vector<cd>>(to_physical());
    return Field(grid_, spec_, std::move(phys));
}

Field Field::conjugate() const {
    // conj(u)^(n) = conj(û(-n)); mode -N/2 has no mirror and maps to itself.
    const int n = grid_.num_modes();
    std::vector<cd> out(static_cast<size_t>(n));
    out[0] = std::conj(spec_[0]);
    out[static_cast<size_t>(n / 2)] = std::conj(spec_[static_cast<size_t>(n / 2)]);
    for (int k = 1; k < n / 2; ++k) {
        out[static_cast<size_t>(k)] = std::conj(spec_[static_cast<size_t>(n - k)]);
        out[static_cast<size_t>(n - k)] = std::conj(spec_[static_cast<size_t>(k)]);
    }
    return Field(grid_, std::move(out), nullptr);
}

void require_same_grid(const Field& a, const Field& b) {
    if (a.grid() != b.grid())
        throw GridMismatch("fields live on different grids");
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    out.phys_.reset();
    kernels::axpy(cd(1.0, 0.0), b.spec_.data(), out.spec_.data(), out.spec_.size());
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out = a;
    out.phys_.reset();
    kernels::axpy(cd(-1.0, 0.0), b.spec_.data(), out.spec_.data(), out.spec_.size());
    return out;
}

Field operator*(cd s, const Field& a) {
    std::vector<cd> out(a.spec_.size());
    kernels::scale(s, a.spec_.data(), out.data(), out.size());
    return Field(a.grid_, std::move(out), nullptr);
}

Field& Field::operator+=(const Field& b) {
    require_same_grid(*this, b);
    phys_.reset();
    kernels::axpy(cd(1.0, 0.0), b.spec_.data(), spec_.data(), spec_.size());
    return *this;
}

} // namespace kdnls
