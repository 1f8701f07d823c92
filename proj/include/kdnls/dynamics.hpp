#pragma once

#include "kdnls/field.hpp"

namespace kdnls {

/// Equation constants. renorm_c0 and mu are frozen from the initial datum by
/// for_datum() and never updated along a run.
struct EquationParams {
    double alpha = 0.0;
    double beta = 0.0;     // ≤ 0; main-theory runs use beta < 0
    double epsilon = 0.0;  // parabolic regularization strength, ≥ 0
    double renorm_c0 = 0.0; // 2α·P₀(|φ|²)
    double mu = 0.0;        // |β|·P₀(|φ|²), the propagator drift

    static EquationParams for_datum(double alpha, double beta, double epsilon,
                                    const Field& phi);
};

enum class RhsKind { original, renormalized, regularized };

/// α ∂x[|u|²u] + β ∂x[H(|u|²)u], evaluated with the dealiased product chain.
/// Warns (rate-limited, via stderr) when the H¹ tail above N/3 exceeds
/// 1e-6 of the total; aliasing then silently corrupts identity checks.
Field nonlinearity(const Field& u, const EquationParams& p);

/// original:     i∂x²u + nonlinearity(u)
/// renormalized: original − renorm_c0·∂x u
/// regularized:  (i + ε)∂x²u + nonlinearity(u); requires epsilon > 0
Field rhs(const Field& u, const EquationParams& p, RhsKind kind);

/// Resonant decomposition of the renormalized nonlinearity (diagonal vs
/// off-diagonal modes): eq. of motion becomes
///   ∂t u − i∂x²u − βP₀(|φ|²)D_x u = N₀[u,φ;u] + N_u[u,u,u].
struct ResonantParts {
    Field n0; // [P₀(|u₁|²)−P₀(|u₂|²)]·(2α∂x w + β D_x w)
    Field nu; // sgn-difference diagonal + cubic diagonal + off-diagonal sums
};
ResonantParts resonant_parts(const Field& u1, const Field& u2, const Field& u3,
                             const Field& w, const EquationParams& p);

/// The N₀ part alone (cheap; no O(N²) sums).
Field resonant_n0(const Field& u1, const Field& u2, const Field& w,
                  const EquationParams& p);

/// ‖D_x^{1/2}(|u|²)‖²_{L²}; −β times this is the instantaneous mass decay.
double dissipation_rate(const Field& u);

/// Relative H¹ tail above N/3 that triggers the resolution warning.
inline constexpr double kResolutionWarnThreshold = 1e-6;

} // namespace kdnls
