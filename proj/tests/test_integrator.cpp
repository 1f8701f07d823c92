#include "kdnls/integrator.hpp"

#include "kdnls/diagnostics.hpp"
#include "kdnls/errors.hpp"
#include "kdnls/multiplier.hpp"
#include "kdnls/norms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kdnls;

namespace {

double rel_l2_diff(const Field& a, const Field& b) {
    return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

} // namespace

TEST_CASE("propagate_linear examples") {
    GridSpec g(32);
    SUBCASE("pure dispersion phase at n = 1") {
        Field u = Field::from_modes(g, {{1, 1.0}});
        const double pi = kTwoPi / 2.0;
        Field out = propagate_linear(u, PropagatorSpec{pi, 0.0, 0.0});
        CHECK(std::abs(out.mode(1) - cd(-1.0, 0.0)) <= 1e-12);
    }
    SUBCASE("drift decay at n = 2") {
        Field u = Field::from_modes(g, {{2, 1.0}});
        Field out = propagate_linear(u, PropagatorSpec{1.0, 1.0, 0.0});
        const cd expect = std::exp(cd(-2.0, -4.0));
        CHECK(std::abs(out.mode(2) - expect) <= 1e-14);
    }
    SUBCASE("contraction for mu > 0") {
        std::mt19937_64 rng(81);
        Field u = oracles::random_band_limited(g, 10, 0.5, rng);
        Field out = propagate_linear(u, PropagatorSpec{0.3, 0.7, 0.0});
        CHECK(l2_norm(out) <= l2_norm(u) * (1.0 + 1e-14));
    }
}

TEST_CASE("lawson step reduces to the exact propagator when nonlinearity is off") {
    GridSpec g(32);
    std::mt19937_64 rng(83);
    Field u = oracles::random_band_limited(g, 9, 1.0, rng);
    EquationParams p; // alpha = beta = 0, mu = 0
    Field stepped = step(u, p, RhsKind::original, 1e-2);
    Field exact = propagate_linear(u, PropagatorSpec{1e-2, 0.0, 0.0});
    CHECK(rel_l2_diff(stepped, exact) <= 1e-14);
}

TEST_CASE("plane wave is advanced to machine-level accuracy") {
    GridSpec g(32);
    const cd A(1.0, 0.0);
    Field phi = Field::from_modes(g, {{1, A}});
    EquationParams p = EquationParams::for_datum(1.0, -1.0, 0.0, phi);
    Field u = phi;
    const double dt = 1e-3;
    for (int i = 0; i < 1000; ++i) u = step(u, p, RhsKind::original, dt);
    // n=1, |A|=1: dispersion exactly cancels the nonlinear rotation
    CHECK(rel_l2_diff(u, phi) <= 1e-10);
}

TEST_CASE("temporal order of the Lawson scheme is four") {
    GridSpec g(32);
    Field phi = Field::from_modes(g, {{1, cd(0.9, 0.0)}, {2, cd(0.45, 0.2)}});
    EquationParams p = EquationParams::for_datum(1.0, -1.0, 0.0, phi);
    const double T = 0.05;

    auto run = [&](double dt) {
        Field u = phi;
        const auto steps = static_cast<long long>(std::llround(T / dt));
        for (long long i = 0; i < steps; ++i) u = step(u, p, RhsKind::renormalized, dt);
        return u;
    };
    Field ref = run(T / 1024.0);
    std::vector<double> dts = {T / 16.0, T / 32.0, T / 64.0};
    std::vector<double> errs;
    for (double dt : dts) errs.push_back(l2_norm(run(dt) - ref));
    const double order = convergence_rate(errs, dts);
    CHECK(order >= 3.5);
    CHECK(order <= 4.5);
}

TEST_CASE("evolve") {
    GridSpec g(32);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.1;
    cfg.snapshot_stride = 10;
    cfg.residual_stencil_h = 1e-2;

    SUBCASE("free evolution equals the composed propagator at every snapshot") {
        std::mt19937_64 rng(91);
        Field phi = oracles::random_band_limited(g, 8, 1.0, rng);
        EquationParams p;
        Trajectory traj = evolve(phi, p, RhsKind::original, cfg);
        REQUIRE(traj.times.size() == 11);
        for (size_t k = 0; k < traj.times.size(); ++k) {
            Field exact = propagate_linear(phi, PropagatorSpec{traj.times[k], 0.0, 0.0});
            CHECK(rel_l2_diff(traj.states[k], exact) <= 1e-12);
        }
    }
    SUBCASE("plane wave: dissipation accumulator stays zero") {
        Field phi = Field::from_modes(g, {{1, 1.0}});
        EquationParams p = EquationParams::for_datum(1.0, -1.0, 0.0, phi);
        Trajectory traj = evolve(phi, p, RhsKind::original, cfg);
        for (double a : traj.dissipation_accum) CHECK(std::abs(a) <= 1e-12);
    }
    SUBCASE("two-mode beta run: accumulator strictly increases") {
        Field phi = Field::from_modes(g, {{1, 1.0}, {2, cd(0.5, 0.0)}});
        EquationParams p = EquationParams::for_datum(0.0, -1.0, 0.0, phi);
        // oracle at t=0: the integrand is the dissipation rate of phi
        CHECK(dissipation_rate(phi) > 0.1);
        Trajectory traj = evolve(phi, p, RhsKind::original, cfg);
        for (size_t k = 1; k < traj.dissipation_accum.size(); ++k)
            CHECK(traj.dissipation_accum[k] > traj.dissipation_accum[k - 1]);
        // first snapshot's accumulated value is close to rate(phi)·t
        CHECK(traj.dissipation_accum[1] ==
              doctest::Approx(dissipation_rate(phi) * traj.times[1]).epsilon(0.2));
    }
    SUBCASE("blowup is flagged, not thrown, and the trajectory is truncated") {
        // beta = 0 keeps mu = 0, so nothing damps the absurd step size
        Field phi = Field::from_modes(g, {{1, 5.0}, {2, 5.0}});
        EquationParams p = EquationParams::for_datum(5.0, 0.0, 0.0, phi);
        SolverConfig bad = cfg;
        bad.dt = 10.0;
        bad.t_final = 100.0;
        bad.residual_stencil_h = 10.0;
        bad.snapshot_stride = 1;
        Trajectory traj = evolve(phi, p, RhsKind::original, bad);
        CHECK(traj.blew_up);
        CHECK(traj.times.size() < 11);
        for (const Field& s : traj.states)
            CHECK(std::isfinite(l2_norm(s)));
    }
}

TEST_CASE("mollify_initial") {
    GridSpec g(32);
    SUBCASE("cutoff arithmetic: eps=0.3, lambda=0.4 keeps modes {0,1}") {
        Field phi = Field::from_modes(g, {{0, 1.0}, {1, 1.0}, {5, 1.0}});
        Field out = mollify_initial(phi, 0.3, 0.4);
        CHECK(std::abs(out.mode(0) - cd(1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(out.mode(1) - cd(1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(out.mode(5)) <= 1e-15);
    }
    SUBCASE("cutoff beyond the grid is an error") {
        Field phi = Field::zero(g);
        CHECK_THROWS_AS(mollify_initial(phi, 1e-9, 0.45), CutoffExceedsGrid);
    }
    SUBCASE("projection contracts every Sobolev norm") {
        std::mt19937_64 rng(97);
        Field phi = oracles::random_band_limited(g, 15, 0.7, rng);
        Field out = mollify_initial(phi, 0.2, 0.3);
        for (double s : {0.0, 1.0, 2.5})
            CHECK(sobolev_norm(out, s) <= sobolev_norm(phi, s) * (1.0 + 1e-14));
    }
    SUBCASE("parameter validation") {
        Field phi = Field::zero(g);
        CHECK_THROWS_AS(mollify_initial(phi, 1.5, 0.3), std::invalid_argument);
        CHECK_THROWS_AS(mollify_initial(phi, 0.5, 0.7), std::invalid_argument);
    }
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.1;
    cfg.residual_stencil_h = 1e-3;
    CHECK_NOTHROW(cfg.validate());
    SolverConfig bad = cfg;
    bad.residual_stencil_h = 1e-4;
    CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
    bad = cfg;
    bad.t_final = 0.0105; // not an integer multiple of dt... (10.5 steps)
    CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
}

TEST_CASE("mass monotonicity for beta < 0") {
    GridSpec g(64);
    Field phi = Field::from_modes(g, {{1, 1.0}, {2, cd(0.5, 0.0)}});
    EquationParams p = EquationParams::for_datum(1.0, -1.0, 0.0, phi);
    SolverConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_final = 0.2;
    cfg.snapshot_stride = 20;
    cfg.residual_stencil_h = 1e-2;
    Trajectory traj = evolve(phi, p, RhsKind::renormalized, cfg);
    const double m0 = mass(traj.initial_datum());
    for (size_t k = 1; k < traj.times.size(); ++k)
        CHECK(mass(traj.states[k]) <= mass(traj.states[k - 1]) + 1e-10 * m0);
}
