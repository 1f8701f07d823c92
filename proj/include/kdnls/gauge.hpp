#pragma once

#include "kdnls/dynamics.hpp"
#include "kdnls/field.hpp"
#include "kdnls/integrator.hpp"

#include <vector>

namespace kdnls {

enum class GaugeSign { plus, minus };

/// ρ± = ∂x⁻¹P^±_{α,β}(|u|²) and v± = e^{ρ±}P±u. The ρ± are genuinely
/// complex: their α-part is a pure phase (classical DNLS gauge) and the
/// β-part carries the amplitude weight Re ρ± = ∓(β/2)∂x⁻¹P_{≠0}(|u|²).
struct GaugeState {
    Field rho_plus;
    Field rho_minus;
    Field v_plus;
    Field v_minus;
    double source_time = 0.0;

    const Field& rho(GaugeSign s) const {
        return s == GaugeSign::plus ? rho_plus : rho_minus;
    }
    const Field& v(GaugeSign s) const {
        return s == GaugeSign::plus ? v_plus : v_minus;
    }
};

/// P^±_{α,β} m = (−iαP_{≠0} ∓ βP_±) m for real m; throws NonRealInput when
/// ‖Im m‖ exceeds 1e-12 relative.
Field weighted_projection(const Field& m, const EquationParams& p, GaugeSign sign);

/// Same multiplier without the realness gate (the N_v groups apply it to
/// complex densities like u·ū_x).
Field weighted_projection_raw(const Field& f, const EquationParams& p,
                              GaugeSign sign);

/// Exact def:vpm forward transform; exponentials evaluated pointwise on the
/// 3/2-padded grid and truncated.
GaugeState gauge_forward(const Field& u, const EquationParams& p,
                         double source_time = 0.0);

/// u = P₀u + e^{−ρ₊}v₊ + e^{−ρ₋}v₋; inverse of gauge_forward up to the
/// truncation of the gauge factors.
Field gauge_reconstruct(const GaugeState& g, cd u_mean);

enum class NvTag { ubarx, u3x, pm, p_inv, quintic };

struct NvTermGroup {
    NvTag tag;
    Field value;
};

/// The five displayed groups of N_v^±[u]; their sum is the gauge-transformed
/// nonlinearity.
std::vector<NvTermGroup> nv_nonlinearity(const Field& u, const EquationParams& p,
                                         GaugeSign sign);
Field nv_total(const Field& u, const EquationParams& p, GaugeSign sign);

/// ‖∂t v± − i∂x²v± − βP₀(|φ|²)D_x v± − N₀[u,φ;v±] − N_v^±[u]‖_{H^s} / ‖v±‖_{H^s}
/// at snapshot time t, with ∂t v± from a centered 5-point stencil of spacing
/// stencil_h. φ defaults to the run's t=0 datum; pass phi_override to
/// re-freeze at a restart point instead. Throws InsufficientStencil when the
/// trajectory does not cover t ± 2·stencil_h at that spacing.
double gauge_equation_residual(const Trajectory& traj, const EquationParams& p,
                               double t, GaugeSign sign, double stencil_h,
                               double norm_s,
                               const Field* phi_override = nullptr);

/// Hayashi–Ozawa gauge v = e^{iΦ[u]}u with the torus primitive
/// Φ = −(3/4)∂x⁻¹[αP_{≠0}(|u|²) + βH(|u|²)]. Unimodular: |v| = |u| at every
/// collocation point.
Field hayashi_ozawa_gauge(const Field& u, const EquationParams& p);

} // namespace kdnls
