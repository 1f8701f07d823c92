#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace kdnls::kernels {

using cd = std::complex<double>;

/// Data-parallel primitives behind the spectral pipeline. Every operation has
/// a portable scalar reference and (on x86 with AVX2+FMA) a vectorized
/// variant; the active implementation is picked once at startup from CPUID
/// and can be pinned with force_isa() for equivalence testing.
enum class Isa { scalar, avx2 };

Isa active_isa();
void force_isa(Isa isa);
bool isa_available(Isa isa);
std::string isa_name(Isa isa);

/// out[i] = a[i] * b[i]
void cmul(const cd* a, const cd* b, cd* out, std::size_t n);
/// y[i] += alpha * x[i]
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);
/// out[i] = alpha * x[i]
void scale(cd alpha, const cd* x, cd* out, std::size_t n);
/// out[i] = |a[i]|^2
void abs2(const cd* a, double* out, std::size_t n);
/// Σ |a[i]|^2
double norm2(const cd* a, std::size_t n);
/// Σ w[i] |a[i]|^2
double weighted_norm2(const double* w, const cd* a, std::size_t n);

// Scalar reference implementations, exposed so tests can compare lanes.
namespace ref {
void cmul(const cd* a, const cd* b, cd* out, std::size_t n);
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);
void scale(cd alpha, const cd* x, cd* out, std::size_t n);
void abs2(const cd* a, double* out, std::size_t n);
double norm2(const cd* a, std::size_t n);
double weighted_norm2(const double* w, const cd* a, std::size_t n);
} // namespace ref

} // namespace kdnls::kernels
