#pragma once

#include "kdnls/dynamics.hpp"
#include "kdnls/field.hpp"
#include "kdnls/multiplier.hpp"

#include <cstddef>
#include <vector>

namespace kdnls {

enum class Scheme { lawson_rk4 };

struct SolverConfig {
    double dt = 1e-3;
    double t_final = 1.0;
    Scheme scheme = Scheme::lawson_rk4;
    int snapshot_stride = 1;
    double residual_stencil_h = 1e-3; // ≥ dt; stencil spacing for FD residuals
    double norm_s = 2.0;              // Sobolev index for reports

    /// Throws ConfigInvalid naming the offending field.
    void validate() const;
};

/// Coefficientwise exp(t(−in² − μ|n| − εn²)). Mass-nonincreasing for
/// μ,ε ≥ 0; throws BackwardDissipativeStep for t < 0 with dissipation on.
Field propagate_linear(const Field& u, const PropagatorSpec& spec);

/// Fixed-step trajectory with co-integrated dissipation ∫₀ᵗ‖D½(|u|²)‖² dt′
/// (composite Simpson over per-step integrand values; an odd running end is
/// closed by the quadratic one-interval rule).
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> states;
    std::vector<double> dissipation_accum;
    EquationParams params;
    SolverConfig config;
    RhsKind kind = RhsKind::original;
    bool blew_up = false;
    bool resolution_warning = false;

    const Field& initial_datum() const { return states.front(); }
    double snapshot_dt() const { return config.dt * config.snapshot_stride; }
    /// Snapshot index whose time matches t; throws if no snapshot lands there.
    std::size_t index_at_time(double t) const;
};

/// One Lawson(4) step: RK4 on the interaction-picture nonlinearity, with the
/// linear part (dispersion + μ-drift + ε-dissipation + renormalization
/// transport) applied exactly through its Fourier symbol. Throws
/// NumericalBlowup on non-finite output.
Field step(const Field& u, const EquationParams& p, RhsKind kind, double dt);

/// March from phi to t_final, storing every snapshot_stride-th state. A
/// blowup flags and truncates the trajectory instead of throwing.
Trajectory evolve(const Field& phi, const EquationParams& p, RhsKind kind,
                  const SolverConfig& cfg);

/// Bona–Smith mollification P_{≤ ε^{−λ}} phi, sharp truncation.
/// Requires 0 < eps < 1 and 0 < lambda < 1/2; throws CutoffExceedsGrid when
/// ε^{−λ} > N/2.
Field mollify_initial(const Field& phi, double eps, double lambda);

/// Reusable stepper with cached propagator symbols (what evolve runs on).
class LawsonStepper {
public:
    LawsonStepper(const GridSpec& grid, const EquationParams& p, RhsKind kind,
                  double dt);
    Field advance(const Field& u) const;
    double dt() const { return dt_; }

private:
    Field apply_symbols(const Field& u, const std::vector<cd>& s) const;
    Field effective_nonlinearity(const Field& u) const;

    GridSpec grid_;
    EquationParams params_;
    RhsKind kind_;
    double dt_;
    std::vector<cd> half_, full_; // exp((dt/2)L), exp(dt L)
};

} // namespace kdnls
