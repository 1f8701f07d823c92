#pragma once

#include <complex>
#include <span>

namespace kdnls::fft {

using cd = std::complex<double>;

/// Analysis: samples u(x_j) -> coefficients û(n) in transform order,
/// normalized so that u(x) = Σ û(n) e^{inx}. in and out must not alias.
void forward(std::span<const cd> in, std::span<cd> out);

/// Synthesis: coefficients û(n) -> samples u(x_j). in and out must not alias.
void inverse(std::span<const cd> in, std::span<cd> out);

} // namespace kdnls::fft
