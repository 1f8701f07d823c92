#pragma once

#include "kdnls/field.hpp"

#include <variant>

namespace kdnls {

// Fourier multiplier operators used throughout: symbols act coefficientwise
// on û(n).

struct Derivative {
    int order = 1; // symbol (in)^order
};
struct FractionalDerivative {
    double sigma; // symbol |n|^sigma; D_x = fractional(1)
};
struct HilbertTransform {}; // symbol -i·sgn(n), sgn(0) = 0
struct ProjPlus {};         // χ_{n>0}
struct ProjMinus {};        // χ_{n<0}
struct ProjZero {};         // χ_{n=0}
struct ProjNonzero {};      // χ_{n≠0}
struct ProjLeq {
    int cutoff; // χ_{|n|≤cutoff}; cutoff < 0 is InvalidCutoff
};
struct Antiderivative {}; // symbol (in)^{-1} on n≠0; requires û(0) ≈ 0
struct PropagatorSpec {
    // symbol exp(t·(-in² - mu|n| - epsilon·n²)); modulus ≤ 1 for mu,epsilon ≥ 0.
    double t = 0.0;
    double mu = 0.0;
    double epsilon = 0.0;
};

using MultiplierKind =
    std::variant<Derivative, FractionalDerivative, HilbertTransform, ProjPlus,
                 ProjMinus, ProjZero, ProjNonzero, ProjLeq, Antiderivative,
                 PropagatorSpec>;

/// Symbol value at mode n. Throws InvalidCutoff / BackwardDissipativeStep for
/// invalid parameterizations.
cd multiplier_symbol(const MultiplierKind& m, int n);

/// û(n) -> symbol(n)·û(n). Input unchanged. For Antiderivative, throws
/// AntiderivativeOfNonMeanZero when |û(0)| > 1e-12·‖û‖_{ℓ²}.
Field apply_multiplier(const Field& u, const MultiplierKind& m);

// Named conveniences.
Field derivative(const Field& u, int order = 1);
Field fractional_derivative(const Field& u, double sigma);
Field hilbert(const Field& u);
Field proj_plus(const Field& u);
Field proj_minus(const Field& u);
Field proj_zero(const Field& u);
Field proj_nonzero(const Field& u);
Field proj_leq(const Field& u, int cutoff);
Field antiderivative(const Field& u);

} // namespace kdnls
