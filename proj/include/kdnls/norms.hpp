#pragma once

#include "kdnls/field.hpp"

namespace kdnls {

/// H^s norm: (2π Σ ⟨n⟩^{2s} |û(n)|²)^{1/2}, ⟨n⟩ = (1+n²)^{1/2}. Coincides
/// with the L² norm at s = 0.
double sobolev_norm(const Field& u, double s);

/// L² norm (2π Σ |û(n)|²)^{1/2}.
double l2_norm(const Field& u);

/// P₀(|u|²) = (2π)⁻¹ ∫ |u|² dx = Σ |û(n)|², by Parseval.
double mean_intensity(const Field& u);

/// max_j |u(x_j)| over collocation points.
double sup_norm(const Field& u);

/// ‖P_{>K} u‖_{H^s} / ‖u‖_{H^s}; resolution diagnostic for the N/3 tail.
double tail_fraction(const Field& u, int cutoff, double s);

} // namespace kdnls
