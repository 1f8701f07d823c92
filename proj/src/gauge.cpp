#include "kdnls/gauge.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/multiplier.hpp"
#include "kdnls/norms.hpp"
#include "kdnls/product.hpp"

#include <cmath>

namespace kdnls {

namespace {

Field proj(const Field& u, GaugeSign s) {
    return s == GaugeSign::plus ? proj_plus(u) : proj_minus(u);
}

Field proj_opposite(const Field& u, GaugeSign s) {
    return s == GaugeSign::plus ? proj_minus(u) : proj_plus(u);
}

double sign_value(GaugeSign s) { return s == GaugeSign::plus ? 1.0 : -1.0; }

Field exp_field(const Field& rho) {
    return map_on_padded_grid(rho, [](cd z) { return std::exp(z); });
}

// [P_±, f]g = P_±(fg) − f·P_±(g)
Field commutator_proj(const Field& f, const Field& g, GaugeSign s) {
    return proj(dealiased_product(f, g), s) - dealiased_product(f, proj(g, s));
}

} // namespace

Field weighted_projection_raw(const Field& f, const EquationParams& p,
                              GaugeSign sign) {
    Field out = cd(0.0, -p.alpha) * proj_nonzero(f);
    out += cd(-sign_value(sign) * p.beta, 0.0) * proj(f, sign);
    return out;
}

Field weighted_projection(const Field& m, const EquationParams& p,
                          GaugeSign sign) {
    const Field imag_part = cd(0.5, 0.0) * (m - m.conjugate());
    const double rel = l2_norm(m);
    if (l2_norm(imag_part) > 1e-12 * std::max(rel, 1e-300))
        throw NonRealInput("weighted_projection: input is not real-valued");
    return weighted_projection_raw(m, p, sign);
}

GaugeState gauge_forward(const Field& u, const EquationParams& p,
                         double source_time) {
    const Field m = abs_squared(u);
    // P^±_{α,β} annihilates the mean exactly, so the periodic primitive is
    // well-defined with no tolerance at stake.
    Field rho_p = antiderivative(weighted_projection_raw(m, p, GaugeSign::plus));
    Field rho_m = antiderivative(weighted_projection_raw(m, p, GaugeSign::minus));
    Field v_p = dealiased_product(exp_field(rho_p), proj_plus(u));
    Field v_m = dealiased_product(exp_field(rho_m), proj_minus(u));
    return GaugeState{std::move(rho_p), std::move(rho_m), std::move(v_p),
                      std::move(v_m), source_time};
}

Field gauge_reconstruct(const GaugeState& g, cd u_mean) {
    require_same_grid(g.rho_plus, g.v_plus);
    require_same_grid(g.rho_minus, g.v_minus);
    Field out = Field::from_modes(g.v_plus.grid(), {{0, u_mean}});
    out += dealiased_product(
        map_on_padded_grid(g.rho_plus, [](cd z) { return std::exp(-z); }),
        g.v_plus);
    out += dealiased_product(
        map_on_padded_grid(g.rho_minus, [](cd z) { return std::exp(-z); }),
        g.v_minus);
    return out;
}

std::vector<NvTermGroup> nv_nonlinearity(const Field& u, const EquationParams& p,
                                         GaugeSign sign) {
    const double sv = sign_value(sign);
    const Field m = abs_squared(u);
    const Field ux = derivative(u);
    const Field ubar = u.conjugate();
    const Field ubar_x = derivative(ubar);
    const Field pu = proj(u, sign);
    const Field rho = antiderivative(weighted_projection_raw(m, p, sign));
    const Field erho = exp_field(rho);
    const Field v = dealiased_product(erho, pu);
    const double p0m = m.mean().real();

    // (nonl:ubarx): [αP±(u²ū_x) + βP±(H(uū_x)u) − 2iP^±(uū_x)P±u]·e^{ρ±}
    const Field uubarx = dealiased_product(u, ubar_x);
    Field g1 = cd(p.alpha, 0.0) * proj(dealiased_product(u, u, ubar_x), sign);
    g1 += cd(p.beta, 0.0) * proj(dealiased_product(hilbert(uubarx), u), sign);
    g1 += cd(0.0, -2.0) * dealiased_product(weighted_projection_raw(uubarx, p, sign), pu);
    g1 = dealiased_product(g1, erho);

    // (nonl:u3x): commutator group times e^{ρ±}
    const Field comm_h = hilbert(dealiased_product(ubar, ux)) -
                         dealiased_product(ubar, hilbert(ux));
    Field g2 = cd(p.beta, 0.0) * proj(dealiased_product(u, comm_h), sign);
    g2 += cd(2.0 * p.alpha, 0.0) * commutator_proj(m, ux, sign);
    g2 += cd(p.beta, 0.0) * commutator_proj(m, hilbert(ux), sign);
    g2 += cd(p.beta, 0.0) * commutator_proj(hilbert(m), ux, sign);
    g2 = dealiased_product(g2, erho);

    // (nonl:pm): ∓2iβP₀(|u|²)·∂xP∓[e^{ρ±}P±u]
    Field g3 = cd(0.0, -sv * 2.0 * p.beta * p0m) *
               derivative(proj_opposite(v, sign));

    // (nonl:p-1): −β∂x⁻¹P^±(H(|u|²)∂x(|u|²))·e^{ρ±}P±u
    Field g4 = cd(-p.beta, 0.0) *
               dealiased_product(
                   antiderivative(weighted_projection_raw(
                       dealiased_product(hilbert(m), derivative(m)), p, sign)),
                   v);

    // (nonl:quintic): {P^±[(3/2)α|u|⁴ − (2α∓iβ)P₀(|u|²)|u|² + 2βH(|u|²)|u|²]
    //                  − i[P^±(|u|²)]²}·e^{ρ±}P±u
    Field inner = cd(1.5 * p.alpha, 0.0) * dealiased_product(m, m);
    inner += (cd(-2.0 * p.alpha, sv * p.beta) * cd(p0m, 0.0)) * m;
    inner += cd(2.0 * p.beta, 0.0) * dealiased_product(hilbert(m), m);
    const Field wproj = weighted_projection_raw(m, p, sign);
    Field brace = weighted_projection_raw(inner, p, sign);
    brace += cd(0.0, -1.0) * dealiased_product(wproj, wproj);
    Field g5 = dealiased_product(brace, v);

    std::vector<NvTermGroup> groups;
    groups.push_back({NvTag::ubarx, std::move(g1)});
    groups.push_back({NvTag::u3x, std::move(g2)});
    groups.push_back({NvTag::pm, std::move(g3)});
    groups.push_back({NvTag::p_inv, std::move(g4)});
    groups.push_back({NvTag::quintic, std::move(g5)});
    return groups;
}

Field nv_total(const Field& u, const EquationParams& p, GaugeSign sign) {
    auto groups = nv_nonlinearity(u, p, sign);
    Field sum = std::move(groups.front().value);
    for (size_t i = 1; i < groups.size(); ++i) sum += groups[i].value;
    return sum;
}

double gauge_equation_residual(const Trajectory& traj, const EquationParams& p,
                               double t, GaugeSign sign, double stencil_h,
                               double norm_s, const Field* phi_override) {
    const double snap_h = traj.snapshot_dt();
    const auto stride = static_cast<long long>(std::llround(stencil_h / snap_h));
    if (stride < 1 || std::abs(stencil_h - stride * snap_h) > 1e-9 * stencil_h)
        throw InsufficientStencil(
            "stencil_h is not a multiple of the snapshot spacing");
    const auto center = static_cast<long long>(traj.index_at_time(t));
    const auto last = static_cast<long long>(traj.times.size()) - 1;
    if (center - 2 * stride < 0 || center + 2 * stride > last)
        throw InsufficientStencil("trajectory does not cover t ± 2h");

    auto v_at = [&](long long j) {
        return gauge_forward(traj.states[static_cast<size_t>(j)], p,
                             traj.times[static_cast<size_t>(j)])
            .v(sign);
    };
    const Field vm2 = v_at(center - 2 * stride);
    const Field vm1 = v_at(center - stride);
    const Field v0 = v_at(center);
    const Field vp1 = v_at(center + stride);
    const Field vp2 = v_at(center + 2 * stride);

    const cd w(1.0 / (12.0 * stencil_h), 0.0);
    Field dv = w * (vm2 - vp2 + cd(8.0, 0.0) * (vp1 - vm1));

    const Field& u = traj.states[static_cast<size_t>(center)];
    const Field& phi = phi_override ? *phi_override : traj.initial_datum();
    const double beta_p0_phi = p.beta * mean_intensity(phi);

    Field residual = dv - cd(0.0, 1.0) * derivative(v0, 2) -
                     cd(beta_p0_phi, 0.0) * fractional_derivative(v0, 1.0) -
                     resonant_n0(u, phi, v0, p) - nv_total(u, p, sign);
    return sobolev_norm(residual, norm_s) / sobolev_norm(v0, norm_s);
}

Field hayashi_ozawa_gauge(const Field& u, const EquationParams& p) {
    const Field m = abs_squared(u);
    Field arg = cd(p.alpha, 0.0) * proj_nonzero(m) + cd(p.beta, 0.0) * hilbert(m);
    Field phase = cd(-0.75, 0.0) * antiderivative(arg);
    // Unimodular multiplication at collocation points keeps |v| = |u| exact.
    const auto phase_phys = phase.to_physical();
    auto samples = u.to_physical();
    for (size_t j = 0; j < samples.size(); ++j)
        samples[j] *= std::exp(cd(0.0, phase_phys[j].real()));
    return Field::from_physical(u.grid(), std::move(samples));
}

} // namespace kdnls
