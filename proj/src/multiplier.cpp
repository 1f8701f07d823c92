#include "kdnls/multiplier.hpp"

#include "kdnls/errors.hpp"
#include "kdnls/kernels.hpp"

#include <cmath>

namespace kdnls {

namespace {

inline int sgn(int n) { return (n > 0) - (n < 0); }

struct SymbolVisitor {
    int n;

    cd operator()(const Derivative& d) const {
        cd in(0.0, static_cast<double>(n));
        cd s = 1.0;
        for (int k = 0; k < d.order; ++k) s *= in;
        return s;
    }
    cd operator()(const FractionalDerivative& f) const {
        if (n == 0) return f.sigma == 0.0 ? cd(1.0) : cd(0.0);
        return std::pow(std::abs(static_cast<double>(n)), f.sigma);
    }
    cd operator()(const HilbertTransform&) const { return cd(0.0, -sgn(n)); }
    cd operator()(const ProjPlus&) const { return n > 0 ? 1.0 : 0.0; }
    cd operator()(const ProjMinus&) const { return n < 0 ? 1.0 : 0.0; }
    cd operator()(const ProjZero&) const { return n == 0 ? 1.0 : 0.0; }
    cd operator()(const ProjNonzero&) const { return n != 0 ? 1.0 : 0.0; }
    cd operator()(const ProjLeq& p) const {
        if (p.cutoff < 0) throw InvalidCutoff("proj_leq: negative cutoff");
        return std::abs(n) <= p.cutoff ? 1.0 : 0.0;
    }
    cd operator()(const Antiderivative&) const {
        if (n == 0) return 0.0; // guarded by the mean-freeness check in apply
        return 1.0 / cd(0.0, static_cast<double>(n));
    }
    cd operator()(const PropagatorSpec& p) const {
        if (p.t < 0.0 && (p.mu > 0.0 || p.epsilon > 0.0))
            throw BackwardDissipativeStep(
                "propagator: t < 0 with dissipative symbol");
        const double nn = static_cast<double>(n);
        const double decay = -p.t * (p.mu * std::abs(nn) + p.epsilon * nn * nn);
        const double phase = -p.t * nn * nn;
        return std::exp(decay) * cd(std::cos(phase), std::sin(phase));
    }
};

} // namespace

cd multiplier_symbol(const MultiplierKind& m, int n) {
    return std::visit(SymbolVisitor{n}, m);
}

Field apply_multiplier(const Field& u, const MultiplierKind& m) {
    const GridSpec& g = u.grid();
    const int nmodes = g.num_modes();

    if (std::holds_alternative<Antiderivative>(m)) {
        const double norm = std::sqrt(kernels::norm2(u.spectral().data(),
                                                     u.spectral().size()));
        if (std::abs(u.mean()) > 1e-12 * std::max(norm, 1e-300))
            throw AntiderivativeOfNonMeanZero(
                "antiderivative: û(0) exceeds 1e-12 relative tolerance");
    }

    std::vector<cd> symbols(static_cast<size_t>(nmodes));
    for (int k = 0; k < nmodes; ++k)
        symbols[static_cast<size_t>(k)] = multiplier_symbol(m, g.mode_of(k));

    std::vector<cd> out(static_cast<size_t>(nmodes));
    kernels::cmul(u.spectral().data(), symbols.data(), out.data(), out.size());
    return Field::from_spectral(g, std::move(out));
}

Field derivative(const Field& u, int order) { return apply_multiplier(u, Derivative{order}); }
Field fractional_derivative(const Field& u, double sigma) {
    return apply_multiplier(u, FractionalDerivative{sigma});
}
Field hilbert(const Field& u) { return apply_multiplier(u, HilbertTransform{}); }
Field proj_plus(const Field& u) { return apply_multiplier(u, ProjPlus{}); }
Field proj_minus(const Field& u) { return apply_multiplier(u, ProjMinus{}); }
Field proj_zero(const Field& u) { return apply_multiplier(u, ProjZero{}); }
Field proj_nonzero(const Field& u) { return apply_multiplier(u, ProjNonzero{}); }
Field proj_leq(const Field& u, int cutoff) { return apply_multiplier(u, ProjLeq{cutoff}); }
Field antiderivative(const Field& u) { return apply_multiplier(u, Antiderivative{}); }

} // namespace kdnls
