#include "kdnls/diagnostics.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/fft.hpp"
#include "kdnls/kernels.hpp"
#include "kdnls/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace kdnls {

namespace {

// All §4 functionals are integrals of pointwise products of 𝔪, H𝔪, D𝔪, 𝔭,
// |u_x|² and their derivatives. Each factor is band-limited by ≤ 2N, so on an
// 8N grid every integrand (up to quartic in 𝔪) stays below the Nyquist mode
// and the rectangle rule is an exact quadrature.
class Frame {
public:
    explicit Frame(const Field& u) : n_(u.grid().num_modes()), m_(8 * n_) {
        std::vector<cd> spec(static_cast<size_t>(m_));
        embed(u.spectral(), spec);
        u_.resize(static_cast<size_t>(m_));
        fft::inverse(spec, u_);

        for (int k = 0; k < m_; ++k)
            spec[static_cast<size_t>(k)] *= cd(0.0, mode_of(k));
        ux_.resize(static_cast<size_t>(m_));
        fft::inverse(spec, ux_);

        m_field_.resize(static_cast<size_t>(m_));
        p_field_.resize(static_cast<size_t>(m_));
        for (int j = 0; j < m_; ++j) {
            const cd uj = u_[static_cast<size_t>(j)];
            const cd uxj = ux_[static_cast<size_t>(j)];
            m_field_[static_cast<size_t>(j)] = std::norm(uj);
            p_field_[static_cast<size_t>(j)] = std::imag(std::conj(uj) * uxj);
        }
    }

    const std::vector<cd>& u() const { return u_; }
    const std::vector<cd>& ux() const { return ux_; }
    const std::vector<double>& m() const { return m_field_; }
    const std::vector<double>& p() const { return p_field_; }

    std::vector<double> ux_abs2() const {
        std::vector<double> out(static_cast<size_t>(m_));
        kernels::abs2(ux_.data(), out.data(), out.size());
        return out;
    }

    std::vector<double> hilbert(const std::vector<double>& f) const {
        return real_multiplier(f, [](int mode) {
            return cd(0.0, -((mode > 0) - (mode < 0)));
        });
    }
    std::vector<double> dx(const std::vector<double>& f) const {
        return real_multiplier(f, [](int mode) { return cd(0.0, mode); });
    }
    std::vector<double> Dx(const std::vector<double>& f) const {
        return real_multiplier(f, [](int mode) { return cd(std::abs(mode), 0.0); });
    }

    double integral(const std::vector<double>& f) const {
        double s = 0.0;
        for (double v : f) s += v;
        return s * kTwoPi / m_;
    }

    /// ‖D^σ f‖²_{L²} for real f on the frame grid.
    double d_norm2(const std::vector<double>& f, double sigma) const {
        std::vector<cd> in(static_cast<size_t>(m_)), spec(static_cast<size_t>(m_));
        for (int j = 0; j < m_; ++j) in[static_cast<size_t>(j)] = f[static_cast<size_t>(j)];
        fft::forward(in, spec);
        double s = 0.0;
        for (int k = 0; k < m_; ++k) {
            const double a = std::abs(static_cast<double>(mode_of(k)));
            s += std::pow(a, 2.0 * sigma) * std::norm(spec[static_cast<size_t>(k)]);
        }
        return kTwoPi * s;
    }

    static std::vector<double> mul(const std::vector<double>& a,
                                   const std::vector<double>& b) {
        std::vector<double> out(a.size());
        for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
        return out;
    }

    int grid_points() const { return m_; }

private:
    int mode_of(int k) const { return k < m_ / 2 ? k : k - m_; }

    void embed(std::span<const cd> src, std::vector<cd>& dst) const {
        std::fill(dst.begin(), dst.end(), cd(0.0));
        for (int k = 0; k < n_; ++k) {
            const int mode = k < n_ / 2 ? k : k - n_;
            const int kk = mode >= 0 ? mode : mode + m_;
            dst[static_cast<size_t>(kk)] = src[static_cast<size_t>(k)];
        }
    }

    template <class Symbol>
    std::vector<double> real_multiplier(const std::vector<double>& f,
                                        Symbol symbol) const {
        std::vector<cd> in(static_cast<size_t>(m_)), spec(static_cast<size_t>(m_));
        for (int j = 0; j < m_; ++j) in[static_cast<size_t>(j)] = f[static_cast<size_t>(j)];
        fft::forward(in, spec);
        for (int k = 0; k < m_; ++k)
            spec[static_cast<size_t>(k)] *= symbol(mode_of(k));
        fft::inverse(spec, in);
        std::vector<double> out(static_cast<size_t>(m_));
        for (int j = 0; j < m_; ++j) out[static_cast<size_t>(j)] = in[static_cast<size_t>(j)].real();
        return out;
    }

    int n_;
    int m_;
    std::vector<cd> u_, ux_;
    std::vector<double> m_field_, p_field_;
};

double lhs_on_frame(const Frame& f, IdentityName which) {
    switch (which) {
    case IdentityName::kinetic:
        return f.integral(f.ux_abs2());
    case IdentityName::momentum_m:
        return f.integral(Frame::mul(f.m(), f.p()));
    case IdentityName::momentum_Hm:
        return f.integral(Frame::mul(f.hilbert(f.m()), f.p()));
    case IdentityName::mass_cubed:
        return f.integral(Frame::mul(Frame::mul(f.m(), f.m()), f.m()));
    case IdentityName::m2Hm:
        return f.integral(Frame::mul(Frame::mul(f.m(), f.m()), f.hilbert(f.m())));
    case IdentityName::mHm2: {
        const auto hm = f.hilbert(f.m());
        return f.integral(Frame::mul(f.m(), Frame::mul(hm, hm)));
    }
    }
    throw Error("unreachable identity");
}

double rhs_on_frame(const Frame& f, const EquationParams& p, IdentityName which) {
    const double a = p.alpha, b = p.beta;
    const auto& m = f.m();
    const auto& pp = f.p();

    switch (which) {
    case IdentityName::kinetic: {
        // −3∫(α𝔪 + βH𝔪)∂x(|u_x|²) + β‖D½∂x𝔪‖²
        const auto dux2 = f.dx(f.ux_abs2());
        const auto hm = f.hilbert(m);
        std::vector<double> w(m.size());
        for (size_t i = 0; i < m.size(); ++i) w[i] = a * m[i] + b * hm[i];
        return -3.0 * f.integral(Frame::mul(w, dux2)) + b * f.d_norm2(f.dx(m), 0.5);
    }
    case IdentityName::momentum_m: {
        // −2∫𝔪∂x(|u_x|²) + ∫{2α∂x(𝔪²) + 4β𝔪D𝔪}𝔭
        const auto dux2 = f.dx(f.ux_abs2());
        const auto m2 = Frame::mul(m, m);
        const auto dm = f.Dx(m);
        std::vector<double> w(m.size());
        const auto dxm2 = f.dx(m2);
        for (size_t i = 0; i < m.size(); ++i)
            w[i] = 2.0 * a * dxm2[i] + 4.0 * b * m[i] * dm[i];
        return -2.0 * f.integral(Frame::mul(m, dux2)) + f.integral(Frame::mul(w, pp));
    }
    case IdentityName::momentum_Hm: {
        // −2∫(H𝔪)∂x(|u_x|²) − 2‖D½𝔭‖² + ½‖D½∂x𝔪‖²
        //   + α∫{(3/2)D(𝔪²) − 𝔪D𝔪 + 2(H𝔪)∂x𝔪}𝔭
        //   + β∫{D[𝔪H𝔪] + H[𝔪D𝔪] + (H𝔪)D𝔪}𝔭
        const auto dux2 = f.dx(f.ux_abs2());
        const auto hm = f.hilbert(m);
        const auto dm = f.Dx(m);
        const auto m2 = Frame::mul(m, m);
        const auto dm2 = f.Dx(m2);
        const auto dxm = f.dx(m);
        const auto d_mhm = f.Dx(Frame::mul(m, hm));
        const auto h_mdm = f.hilbert(Frame::mul(m, dm));
        std::vector<double> w(m.size());
        for (size_t i = 0; i < m.size(); ++i)
            w[i] = a * (1.5 * dm2[i] - m[i] * dm[i] + 2.0 * hm[i] * dxm[i]) +
                   b * (d_mhm[i] + h_mdm[i] + hm[i] * dm[i]);
        return -2.0 * f.integral(Frame::mul(hm, dux2)) - 2.0 * f.d_norm2(pp, 0.5) +
               0.5 * f.d_norm2(f.dx(m), 0.5) + f.integral(Frame::mul(w, pp));
    }
    case IdentityName::mass_cubed: {
        // 6∫∂x(𝔪²)𝔭 + 5β∫𝔪³D𝔪. On the β-coefficient: ∂t𝔪 carries
        // 2β𝔪D𝔪 + β(H𝔪)∂x𝔪, and ∫3𝔪²·(H𝔪)∂x𝔪 = ∫(𝔪³)_x H𝔪 = −∫𝔪³D𝔪,
        // so integrating 3𝔪²∂t𝔪 leaves (6 − 1)β∫𝔪³D𝔪.
        const auto m2 = Frame::mul(m, m);
        const auto m3 = Frame::mul(m2, m);
        return 6.0 * f.integral(Frame::mul(f.dx(m2), pp)) +
               5.0 * b * f.integral(Frame::mul(m3, f.Dx(m)));
    }
    case IdentityName::m2Hm: {
        // ∫{4∂x[𝔪H𝔪] − 2D(𝔪²)}𝔭 + α∫𝔪²{(3/2)D(𝔪²) − 2𝔪D𝔪}
        //   + β∫𝔪²{D[𝔪H𝔪] + H[𝔪D𝔪] + 2(H𝔪)D𝔪}
        const auto hm = f.hilbert(m);
        const auto dm = f.Dx(m);
        const auto m2 = Frame::mul(m, m);
        const auto mhm = Frame::mul(m, hm);
        const auto dm2 = f.Dx(m2);
        const auto d_mhm = f.Dx(mhm);
        const auto h_mdm = f.hilbert(Frame::mul(m, dm));
        const auto dx_mhm = f.dx(mhm);
        std::vector<double> w(m.size()), va(m.size()), vb(m.size());
        for (size_t i = 0; i < m.size(); ++i) {
            w[i] = 4.0 * dx_mhm[i] - 2.0 * dm2[i];
            va[i] = m2[i] * (1.5 * dm2[i] - 2.0 * m[i] * dm[i]);
            vb[i] = m2[i] * (d_mhm[i] + h_mdm[i] + 2.0 * hm[i] * dm[i]);
        }
        return f.integral(Frame::mul(w, pp)) + a * f.integral(va) + b * f.integral(vb);
    }
    case IdentityName::mHm2: {
        // ∫{4(H𝔪)D𝔪 − 4D[𝔪H𝔪]}𝔭 + α∫𝔪(H𝔪){3D(𝔪²) − 3𝔪D𝔪}
        //   + β∫𝔪(H𝔪){2D[𝔪H𝔪] + 2H[𝔪D𝔪] − (H𝔪)D𝔪}
        const auto hm = f.hilbert(m);
        const auto dm = f.Dx(m);
        const auto m2 = Frame::mul(m, m);
        const auto mhm = Frame::mul(m, hm);
        const auto dm2 = f.Dx(m2);
        const auto d_mhm = f.Dx(mhm);
        const auto h_mdm = f.hilbert(Frame::mul(m, dm));
        std::vector<double> w(m.size()), va(m.size()), vb(m.size());
        for (size_t i = 0; i < m.size(); ++i) {
            w[i] = 4.0 * hm[i] * dm[i] - 4.0 * d_mhm[i];
            va[i] = mhm[i] * (3.0 * dm2[i] - 3.0 * m[i] * dm[i]);
            vb[i] = mhm[i] * (2.0 * d_mhm[i] + 2.0 * h_mdm[i] - hm[i] * dm[i]);
        }
        return f.integral(Frame::mul(w, pp)) + a * f.integral(va) + b * f.integral(vb);
    }
    }
    throw Error("unreachable identity");
}

double energy_on_frame(const Frame& f, const EquationParams& p) {
    const auto hm = f.hilbert(f.m());
    const auto& m = f.m();
    const auto& u = f.u();
    const auto& ux = f.ux();
    double s = 0.0;
    for (size_t j = 0; j < u.size(); ++j) {
        const cd a = ux[j] - cd(0.0, 0.75) * (p.alpha * m[j] + p.beta * hm[j]) * u[j];
        s += std::norm(a);
    }
    return s * kTwoPi / f.grid_points();
}

double energy_expanded_on_frame(const Frame& f, const EquationParams& p) {
    const auto hm = f.hilbert(f.m());
    const auto& m = f.m();
    const auto& pp = f.p();
    const auto ux2 = f.ux_abs2();
    const double a = p.alpha, b = p.beta;
    double s = 0.0;
    for (size_t j = 0; j < m.size(); ++j) {
        const double w = a * m[j] + b * hm[j];
        s += ux2[j] - 1.5 * w * pp[j] +
             (9.0 / 16.0) *
                 (a * a * m[j] * m[j] * m[j] + 2.0 * a * b * m[j] * m[j] * hm[j] +
                  b * b * m[j] * hm[j] * hm[j]);
    }
    return s * kTwoPi / f.grid_points();
}

// Centered 5-point first derivative over values f(t−2h)..f(t+2h).
double fd5(const double f[5], double h) {
    return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
}

// Snapshot stride realizing the configured stencil spacing.
long long stencil_stride(const Trajectory& traj) {
    const double h = traj.config.residual_stencil_h;
    const double snap = traj.snapshot_dt();
    const auto k = static_cast<long long>(std::llround(h / snap));
    if (k < 1 || std::abs(h - k * snap) > 1e-9 * h)
        throw InsufficientStencil(
            "residual_stencil_h is not a multiple of the snapshot spacing");
    return k;
}

void stencil_indices(const Trajectory& traj, double t, long long idx[5]) {
    const long long k = stencil_stride(traj);
    const auto center = static_cast<long long>(traj.index_at_time(t));
    const auto last = static_cast<long long>(traj.times.size()) - 1;
    if (center - 2 * k < 0 || center + 2 * k > last)
        throw InsufficientStencil("trajectory does not cover t ± 2h");
    for (int i = 0; i < 5; ++i) idx[i] = center + (i - 2) * k;
}

} // namespace

double mass(const Field& u) {
    return kTwoPi * kernels::norm2(u.spectral().data(), u.spectral().size());
}

std::vector<double> mass_identity_residuals(const Trajectory& traj) {
    std::vector<double> res(traj.times.size());
    const double m0 = mass(traj.initial_datum());
    for (size_t k = 0; k < traj.times.size(); ++k)
        res[k] = mass(traj.states[k]) - m0 -
                 traj.params.beta * traj.dissipation_accum[k];
    return res;
}

double energy_functional(const Field& u, const EquationParams& p) {
    return energy_on_frame(Frame(u), p);
}

double energy_functional_expanded(const Field& u, const EquationParams& p) {
    return energy_expanded_on_frame(Frame(u), p);
}

std::string identity_label(IdentityName which) {
    switch (which) {
    case IdentityName::kinetic: return "kinetic";
    case IdentityName::momentum_m: return "momentum_m";
    case IdentityName::momentum_Hm: return "momentum_Hm";
    case IdentityName::mass_cubed: return "mass_cubed";
    case IdentityName::m2Hm: return "m2Hm";
    case IdentityName::mHm2: return "mHm2";
    }
    return "?";
}

double identity_lhs_functional(const Field& u, IdentityName which) {
    return lhs_on_frame(Frame(u), which);
}

double identity_rhs(const Field& u, const EquationParams& p, IdentityName which) {
    return rhs_on_frame(Frame(u), p, which);
}

double identity_residual(const Trajectory& traj, IdentityName which, double t) {
    long long idx[5];
    stencil_indices(traj, t, idx);
    double vals[5];
    for (int i = 0; i < 5; ++i)
        vals[i] = identity_lhs_functional(traj.states[static_cast<size_t>(idx[i])], which);
    const double fd = fd5(vals, traj.config.residual_stencil_h);
    const double rhs = identity_rhs(traj.states[static_cast<size_t>(idx[2])],
                                    traj.params, which);
    return std::abs(fd - rhs) / std::max(1.0, std::abs(rhs));
}

double energy_rate_assembled(const Field& u, const EquationParams& p) {
    const Frame f(u);
    const double a = p.alpha, b = p.beta;
    return rhs_on_frame(f, p, IdentityName::kinetic) -
           1.5 * (a * rhs_on_frame(f, p, IdentityName::momentum_m) +
                  b * rhs_on_frame(f, p, IdentityName::momentum_Hm)) +
           (9.0 / 16.0) * (a * a * rhs_on_frame(f, p, IdentityName::mass_cubed) +
                           2.0 * a * b * rhs_on_frame(f, p, IdentityName::m2Hm) +
                           b * b * rhs_on_frame(f, p, IdentityName::mHm2));
}

double energy_rate_residual(const Trajectory& traj, double t) {
    long long idx[5];
    stencil_indices(traj, t, idx);
    double vals[5];
    for (int i = 0; i < 5; ++i)
        vals[i] = energy_functional(traj.states[static_cast<size_t>(idx[i])],
                                    traj.params);
    const double fd = fd5(vals, traj.config.residual_stencil_h);
    const double assembled =
        energy_rate_assembled(traj.states[static_cast<size_t>(idx[2])], traj.params);
    return std::abs(fd - assembled) / std::max(1.0, std::abs(assembled));
}

LowerBoundFit lower_bound_probe(const Trajectory& traj) {
    LowerBoundFit fit;
    const double m0 = mass(traj.initial_datum());
    if (!(m0 > 0.0)) return fit;
    double c = 0.0;
    bool positive = true;
    for (size_t k = 1; k < traj.times.size(); ++k) {
        const double mk = mass(traj.states[k]);
        if (!(mk > 0.0)) {
            positive = false;
            break;
        }
        c = std::max(c, std::log(m0 / mk) / std::sqrt(traj.times[k]));
    }
    fit.c_fit = std::max(c, 0.0);
    fit.holds = positive && std::isfinite(fit.c_fit);
    return fit;
}

double convergence_rate(std::span<const double> errors,
                        std::span<const double> params) {
    if (errors.size() != params.size() || errors.size() < 2)
        throw std::invalid_argument("convergence_rate: need >= 2 (param, error) pairs");
    double emax = 0.0;
    for (double e : errors) emax = std::max(emax, e);
    if (emax < 1e-13)
        throw DegenerateFit("errors are at the round-off floor");
    double sx = 0.0, sy = 0.0;
    const auto n = static_cast<double>(errors.size());
    std::vector<double> xs(errors.size()), ys(errors.size());
    for (size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0) || !(params[i] > 0.0))
            throw std::invalid_argument("convergence_rate: nonpositive entry");
        xs[i] = std::log(params[i]);
        ys[i] = std::log(errors[i]);
        sx += xs[i];
        sy += ys[i];
    }
    const double xbar = sx / n, ybar = sy / n;
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < errors.size(); ++i) {
        num += (xs[i] - xbar) * (ys[i] - ybar);
        den += (xs[i] - xbar) * (xs[i] - xbar);
    }
    if (den == 0.0) throw DegenerateFit("all params identical");
    return num / den;
}

DiagnosticsRecord diagnostics_at(const Trajectory& traj, std::size_t snapshot) {
    DiagnosticsRecord rec;
    const Field& u = traj.states[snapshot];
    rec.t = traj.times[snapshot];
    rec.mass = mass(u);
    rec.mass_identity_residual = rec.mass - mass(traj.initial_datum()) -
                                 traj.params.beta * traj.dissipation_accum[snapshot];
    rec.energy_E = energy_functional(u, traj.params);
    rec.h1_norm = sobolev_norm(u, 1.0);
    rec.hs_norm = sobolev_norm(u, traj.config.norm_s);
    rec.dissipation_rate = dissipation_rate(u);
    for (IdentityName which :
         {IdentityName::kinetic, IdentityName::momentum_m, IdentityName::momentum_Hm,
          IdentityName::mass_cubed, IdentityName::m2Hm, IdentityName::mHm2}) {
        try {
            rec.identity_residuals[identity_label(which)] =
                identity_residual(traj, which, rec.t);
        } catch (const InsufficientStencil&) {
        }
    }
    return rec;
}

void write_diagnostics_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,mass,mass_identity_residual,energy_E,dissipation_rate,"
           "res_kinetic,res_momentum_m,res_momentum_Hm,res_mass_cubed,"
           "res_m2Hm,res_mHm2,h1,hs\n";

    // One frame per snapshot serves the LHS functionals of every identity; FD
    // residual columns then reuse the per-snapshot traces.
    const size_t count = traj.times.size();
    constexpr int kIds = 6;
    const IdentityName ids[kIds] = {IdentityName::kinetic, IdentityName::momentum_m,
                                    IdentityName::momentum_Hm, IdentityName::mass_cubed,
                                    IdentityName::m2Hm, IdentityName::mHm2};
    std::vector<std::array<double, kIds>> lhs(count), rhs(count);
    std::vector<double> masses(count), energies(count), rates(count), h1(count), hs(count);
    for (size_t k = 0; k < count; ++k) {
        const Frame f(traj.states[k]);
        for (int i = 0; i < kIds; ++i) {
            lhs[k][static_cast<size_t>(i)] = lhs_on_frame(f, ids[i]);
            rhs[k][static_cast<size_t>(i)] = rhs_on_frame(f, traj.params, ids[i]);
        }
        energies[k] = energy_on_frame(f, traj.params);
        masses[k] = mass(traj.states[k]);
        rates[k] = dissipation_rate(traj.states[k]);
        h1[k] = sobolev_norm(traj.states[k], 1.0);
        hs[k] = sobolev_norm(traj.states[k], traj.config.norm_s);
    }

    long long stride = 0;
    try {
        stride = stencil_stride(traj);
    } catch (const InsufficientStencil&) {
    }
    const double m0 = masses.empty() ? 0.0 : masses[0];
    char buf[64];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof(buf), ",%.17g", v);
        out << buf;
    };
    for (size_t k = 0; k < count; ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g", traj.times[k]);
        out << buf;
        emit(masses[k]);
        emit(masses[k] - m0 - traj.params.beta * traj.dissipation_accum[k]);
        emit(energies[k]);
        emit(rates[k]);
        const auto kk = static_cast<long long>(k);
        const bool have_stencil = stride > 0 && kk - 2 * stride >= 0 &&
                                  kk + 2 * stride < static_cast<long long>(count);
        for (int i = 0; i < kIds; ++i) {
            if (!have_stencil) {
                out << ",nan";
                continue;
            }
            double vals[5];
            for (int s = 0; s < 5; ++s)
                vals[s] = lhs[static_cast<size_t>(kk + (s - 2) * stride)][static_cast<size_t>(i)];
            const double fd = fd5(vals, traj.config.residual_stencil_h);
            const double r = rhs[k][static_cast<size_t>(i)];
            emit(std::abs(fd - r) / std::max(1.0, std::abs(r)));
        }
        emit(h1[k]);
        emit(hs[k]);
        out << "\n";
    }
}

void write_plot_script(const std::string& diagnostics_csv_path, std::ostream& out) {
    out << "#!/usr/bin/env python3\n"
           "# Auto-generated: mass / energy / identity-residual traces.\n"
           "import csv\n"
           "import math\n"
           "import matplotlib\n"
           "matplotlib.use(\"Agg\")\n"
           "import matplotlib.pyplot as plt\n"
           "\n"
           "PATH = r\""
        << diagnostics_csv_path
        << "\"\n"
           "rows = []\n"
           "with open(PATH) as f:\n"
           "    for row in csv.DictReader(f):\n"
           "        rows.append({k: float(v) for k, v in row.items()})\n"
           "t = [r[\"t\"] for r in rows]\n"
           "fig, axes = plt.subplots(3, 1, figsize=(8, 10), sharex=True)\n"
           "axes[0].plot(t, [r[\"mass\"] for r in rows], label=\"mass\")\n"
           "axes[0].plot(t, [r[\"energy_E\"] for r in rows], label=\"E[u]\")\n"
           "axes[0].legend(); axes[0].set_ylabel(\"functionals\")\n"
           "axes[1].semilogy(t, [abs(r[\"mass_identity_residual\"]) + 1e-300 for r in rows])\n"
           "axes[1].set_ylabel(\"|mass identity residual|\")\n"
           "names = [\"res_kinetic\", \"res_momentum_m\", \"res_momentum_Hm\",\n"
           "         \"res_mass_cubed\", \"res_m2Hm\", \"res_mHm2\"]\n"
           "for name in names:\n"
           "    series = [(ti, r[name]) for ti, r in zip(t, rows)\n"
           "              if not math.isnan(r[name])]\n"
           "    if series:\n"
           "        axes[2].semilogy([s[0] for s in series],\n"
           "                         [s[1] + 1e-300 for s in series], label=name)\n"
           "axes[2].legend(fontsize=7); axes[2].set_ylabel(\"identity residuals\")\n"
           "axes[2].set_xlabel(\"t\")\n"
           "fig.tight_layout()\n"
           "fig.savefig(PATH + \".png\", dpi=150)\n"
           "print(\"wrote\", PATH + \".png\")\n";
}

} // namespace kdnls
