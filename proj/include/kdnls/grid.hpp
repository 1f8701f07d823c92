#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kdnls {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform collocation grid on T = R/2πZ with N modes n ∈ [−N/2, N/2−1].
///
/// Spectral arrays are stored in transform order: index k holds mode
/// n = k for k < N/2 and n = k − N otherwise. The Fourier convention is
/// u(x) = Σₙ û(n) e^{inx}, û(n) = (2π)⁻¹ ∫ u e^{−inx} dx, so û(0) is the
/// mean of u.
class GridSpec {
public:
    explicit GridSpec(int num_modes) : n_(num_modes) {
        if (n_ < 8 || (n_ & (n_ - 1)) != 0)
            throw std::invalid_argument("GridSpec: num_modes must be a power of two >= 8");
    }

    int num_modes() const { return n_; }
    static constexpr double domain_length() { return kTwoPi; }

    int min_mode() const { return -n_ / 2; }
    int max_mode() const { return n_ / 2 - 1; }

    /// Storage index of mode n.
    int index_of(int mode) const { return mode >= 0 ? mode : mode + n_; }
    /// Mode number stored at index k.
    int mode_of(int index) const { return index < n_ / 2 ? index : index - n_; }

    std::vector<double> collocation_points() const {
        std::vector<double> x(n_);
        for (int j = 0; j < n_; ++j) x[j] = kTwoPi * j / n_;
        return x;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) { return a.n_ == b.n_; }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return a.n_ != b.n_; }

private:
    int n_;
};

} // namespace kdnls
