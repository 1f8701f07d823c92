#pragma once

#include "kdnls/dynamics.hpp"
#include "kdnls/field.hpp"
#include "kdnls/integrator.hpp"

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace kdnls {

/// ∫_T |u|² dx, by Parseval.
double mass(const Field& u);

/// Per-snapshot residual of the mass dissipation identity,
/// mass(t_k) − mass(0) − β·∫₀^{t_k}‖D½(|u|²)‖² dt′, using the trajectory's
/// co-integrated accumulator.
std::vector<double> mass_identity_residuals(const Trajectory& traj);

/// E[u] = ∫ |u_x − i(3/4)(α|u|² + βH(|u|²))u|² dx (compact form).
double energy_functional(const Field& u, const EquationParams& p);
/// The expanded form of E[u] in terms of 𝔪 = |u|² and 𝔭 = Im(ū u_x);
/// agrees with the compact form to round-off — a check of the expansion
/// algebra and the H/D conventions.
double energy_functional_expanded(const Field& u, const EquationParams& p);

enum class IdentityName { kinetic, momentum_m, momentum_Hm, mass_cubed, m2Hm, mHm2 };

std::string identity_label(IdentityName which);

/// The time-differentiated functional (∫|u_x|², ∫𝔪𝔭, ∫(H𝔪)𝔭, ∫𝔪³,
/// ∫𝔪²H𝔪, ∫𝔪(H𝔪)²) evaluated at a single state.
double identity_lhs_functional(const Field& u, IdentityName which);

/// The analytically assembled right-hand side of the identity at one state.
double identity_rhs(const Field& u, const EquationParams& p, IdentityName which);

/// |d/dt LHS (5-point stencil of spacing residual_stencil_h) − RHS| at
/// snapshot time t, normalized by max(1, |RHS|).
double identity_residual(const Trajectory& traj, IdentityName which, double t);

/// ∂tE assembled from the six identities with the energy's own weights
/// (1, −3/2·α, −3/2·β, 9/16·α², 9/8·αβ, 9/16·β²).
double energy_rate_assembled(const Field& u, const EquationParams& p);

/// |FD ∂tE − assembled ∂tE| / max(1, |assembled|) at snapshot time t.
double energy_rate_residual(const Trajectory& traj, double t);

struct LowerBoundFit {
    double c_fit = 0.0; // smallest C with mass(t) ≥ mass(0)·exp(−C√t)
    bool holds = false; // mass stayed positive and the fit is finite
};
LowerBoundFit lower_bound_probe(const Trajectory& traj);

/// Least-squares slope of log(error) against log(param). Throws
/// DegenerateFit when the errors sit at the round-off floor.
double convergence_rate(std::span<const double> errors,
                        std::span<const double> params);

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double mass_identity_residual = 0.0;
    double energy_E = 0.0;
    double h1_norm = 0.0;
    double hs_norm = 0.0;
    double dissipation_rate = 0.0;
    std::map<std::string, double> identity_residuals; // empty near the ends
};

DiagnosticsRecord diagnostics_at(const Trajectory& traj, std::size_t snapshot);

/// diagnostics.csv: columns (t, mass, mass_identity_residual, energy_E,
/// dissipation_rate, res_kinetic, res_momentum_m, res_momentum_Hm,
/// res_mass_cubed, res_m2Hm, res_mHm2, h1, hs); residuals are nan where the
/// stencil does not fit.
void write_diagnostics_csv(const Trajectory& traj, std::ostream& out);

/// Self-contained matplotlib script for mass/energy/residual traces; the
/// data path is inlined so the script runs from anywhere.
void write_plot_script(const std::string& diagnostics_csv_path, std::ostream& out);

} // namespace kdnls
