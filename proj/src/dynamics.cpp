#include "kdnls/dynamics.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/fft.hpp"
#include "kdnls/kernels.hpp"
#include "kdnls/multiplier.hpp"
#include "kdnls/norms.hpp"
#include "kdnls/product.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>

namespace kdnls {

namespace {

inline int sgn(int n) { return (n > 0) - (n < 0); }

void warn_if_unresolved(const Field& u) {
    static std::atomic<int> budget{8};
    const int cutoff = u.grid().num_modes() / 3;
    if (tail_fraction(u, cutoff, 1.0) <= kResolutionWarnThreshold) return;
    if (budget.fetch_sub(1, std::memory_order_relaxed) > 0)
        std::fprintf(stderr,
                     "kdnls: warning: field poorly resolved on N=%d grid "
                     "(H1 tail above N/3 exceeds %g)\n",
                     u.grid().num_modes(), kResolutionWarnThreshold);
}

// Exact trilinear term F⁻¹[ Σ_{n=n₁−n₂+n₃} in(α − iβ sgn(n₁−n₂))
// û₁(n₁)ū̂₂(n₂)û₃(n₃) ] with no intermediate truncation: the pair u₁ū₂ keeps
// its full spectrum on a 4N grid, the sgn multiplier acts there, and only the
// final result is windowed back to N modes.
Field exact_kdnls_trilinear(const Field& u1, const Field& u2, const Field& u3,
                            double alpha, double beta) {
    const GridSpec& g = u1.grid();
    const int n = g.num_modes();
    const int m = 4 * n;
    const Field u2c = u2.conjugate();

    auto embed = [&](const Field& f, std::vector<cd>& dst) {
        std::fill(dst.begin(), dst.end(), cd(0.0));
        for (int k = 0; k < n; ++k) {
            const int mode = g.mode_of(k);
            const int kk = mode >= 0 ? mode : mode + m;
            dst[static_cast<size_t>(kk)] = f.spectral()[static_cast<size_t>(k)];
        }
    };

    std::vector<cd> spec(static_cast<size_t>(m)), pa(static_cast<size_t>(m)),
        pb(static_cast<size_t>(m));
    embed(u1, spec);
    fft::inverse(spec, pa);
    embed(u2c, spec);
    fft::inverse(spec, pb);
    kernels::cmul(pa.data(), pb.data(), pa.data(), pa.size());
    fft::forward(pa, spec); // exact spectrum of u₁ū₂

    for (int k = 0; k < m; ++k) {
        const int mode = k < m / 2 ? k : k - m;
        spec[static_cast<size_t>(k)] *= cd(alpha, -beta * sgn(mode));
    }
    fft::inverse(spec, pa);
    embed(u3, spec);
    fft::inverse(spec, pb);
    kernels::cmul(pa.data(), pb.data(), pa.data(), pa.size());
    fft::forward(pa, spec);

    std::vector<cd> out(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        const int mode = g.mode_of(k);
        const int kk = mode >= 0 ? mode : mode + m;
        out[static_cast<size_t>(k)] =
            cd(0.0, static_cast<double>(mode)) * spec[static_cast<size_t>(kk)];
    }
    return Field::from_spectral(g, std::move(out));
}

} // namespace

EquationParams EquationParams::for_datum(double alpha, double beta,
                                         double epsilon, const Field& phi) {
    EquationParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.epsilon = epsilon;
    const double intensity = mean_intensity(phi);
    p.renorm_c0 = 2.0 * alpha * intensity;
    p.mu = std::abs(beta) * intensity;
    return p;
}

Field nonlinearity(const Field& u, const EquationParams& p) {
    warn_if_unresolved(u);
    const Field m = abs_squared(u);
    Field cubic = dealiased_product(m, u);
    Field kinetic = dealiased_product(hilbert(m), u);
    return derivative(cd(p.alpha, 0.0) * cubic + cd(p.beta, 0.0) * kinetic);
}

Field rhs(const Field& u, const EquationParams& p, RhsKind kind) {
    switch (kind) {
    case RhsKind::original:
        return cd(0.0, 1.0) * derivative(u, 2) + nonlinearity(u, p);
    case RhsKind::renormalized:
        return cd(0.0, 1.0) * derivative(u, 2) + nonlinearity(u, p) -
               cd(p.renorm_c0, 0.0) * derivative(u);
    case RhsKind::regularized:
        if (p.epsilon <= 0.0)
            throw RegularizedWithoutEpsilon("regularized rhs requires epsilon > 0");
        return cd(p.epsilon, 1.0) * derivative(u, 2) + nonlinearity(u, p);
    }
    throw Error("unreachable rhs kind");
}

Field resonant_n0(const Field& u1, const Field& u2, const Field& w,
                  const EquationParams& p) {
    require_same_grid(u1, u2);
    require_same_grid(u1, w);
    const double dP0 = mean_intensity(u1) - mean_intensity(u2);
    return cd(dP0, 0.0) * (cd(2.0 * p.alpha, 0.0) * derivative(w) +
                           cd(p.beta, 0.0) * fractional_derivative(w, 1.0));
}

ResonantParts resonant_parts(const Field& u1, const Field& u2, const Field& u3,
                             const Field& w, const EquationParams& p) {
    require_same_grid(u1, u2);
    require_same_grid(u1, u3);
    require_same_grid(u1, w);
    const GridSpec& g = u1.grid();
    const int nm = g.num_modes();

    Field n0 = resonant_n0(u1, u2, w, p);

    // Diagonal pair sums. S12 = Σ û₁ū̂₂, K12(n) = Σ sgn(n−n′) û₁(n′)ū̂₂(n′),
    // and likewise for the (2,3) pairing.
    std::vector<cd> q12(static_cast<size_t>(nm)), q23(static_cast<size_t>(nm));
    cd s12(0.0), s23(0.0);
    for (int k = 0; k < nm; ++k) {
        const cd c1 = u1.spectral()[static_cast<size_t>(k)];
        const cd c2 = u2.spectral()[static_cast<size_t>(k)];
        const cd c3 = u3.spectral()[static_cast<size_t>(k)];
        q12[static_cast<size_t>(k)] = c1 * std::conj(c2);
        q23[static_cast<size_t>(k)] = std::conj(c2) * c3;
        s12 += q12[static_cast<size_t>(k)];
        s23 += q23[static_cast<size_t>(k)];
    }
    auto sgn_correlation = [&](const std::vector<cd>& q, int mode) {
        cd acc(0.0);
        for (int k = 0; k < nm; ++k) {
            const cd v = q[static_cast<size_t>(k)];
            if (v == cd(0.0)) continue;
            acc += static_cast<double>(sgn(mode - g.mode_of(k))) * v;
        }
        return acc;
    };

    Field t = exact_kdnls_trilinear(u1, u2, u3, p.alpha, p.beta);

    // nu(n) = T(n) − iαn·S12·û₃(n) − [iαn·S23 + βn·K23(n)]·û₁(n)
    //         + βn·[K12(n) − sgn(n)·S12]·û₃(n)
    // (the triple-diagonal term from inclusion-exclusion cancels the
    // displayed −iαn|û|²û diagonal exactly).
    std::vector<cd> nu(static_cast<size_t>(nm));
    for (int k = 0; k < nm; ++k) {
        const int mode = g.mode_of(k);
        const double dn = static_cast<double>(mode);
        const cd c1 = u1.spectral()[static_cast<size_t>(k)];
        const cd c3 = u3.spectral()[static_cast<size_t>(k)];
        const cd k12 = sgn_correlation(q12, mode);
        const cd k23 = sgn_correlation(q23, mode);
        cd v = t.spectral()[static_cast<size_t>(k)];
        v -= cd(0.0, p.alpha * dn) * s12 * c3;
        v -= (cd(0.0, p.alpha * dn) * s23 + p.beta * dn * k23) * c1;
        v += p.beta * dn * (k12 - static_cast<double>(sgn(mode)) * s12) * c3;
        nu[static_cast<size_t>(k)] = v;
    }

    return ResonantParts{std::move(n0),
                         Field::from_spectral(g, std::move(nu))};
}

double dissipation_rate(const Field& u) {
    const Field m = abs_squared(u);
    const Field dm = fractional_derivative(m, 0.5);
    const double n = l2_norm(dm);
    return n * n;
}

} // namespace kdnls
