#include "kdnls/kernels.hpp"

#include <atomic>

namespace kdnls::kernels {

namespace ref {

void cmul(const cd* a, const cd* b, cd* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cd alpha, const cd* x, cd* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

void abs2(const cd* a, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double norm2(const cd* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

double weighted_norm2(const double* w, const cd* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return s;
}

} // namespace ref

#if defined(__x86_64__) || defined(_M_X64)
#define KDNLS_HAVE_AVX2_LANE 1
namespace avx2 {
void cmul(const cd* a, const cd* b, cd* out, std::size_t n);
void axpy(cd alpha, const cd* x, cd* y, std::size_t n);
void scale(cd alpha, const cd* x, cd* out, std::size_t n);
void abs2(const cd* a, double* out, std::size_t n);
double norm2(const cd* a, std::size_t n);
double weighted_norm2(const double* w, const cd* a, std::size_t n);
} // namespace avx2
#endif

namespace {

Isa detect() {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
    return Isa::scalar;
}

std::atomic<Isa> g_isa{detect()};

} // namespace

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
#ifdef KDNLS_HAVE_AVX2_LANE
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) return;
    g_isa.store(isa, std::memory_order_relaxed);
}

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void cmul(const cd* a, const cd* b, cd* out, std::size_t n) {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (active_isa() == Isa::avx2) return avx2::cmul(a, b, out, n);
#endif
    ref::cmul(a, b, out, n);
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n) {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (active_isa() == Isa::avx2) return avx2::axpy(alpha, x, y, n);
#endif
    ref::axpy(alpha, x, y, n);
}

void scale(cd alpha, const cd* x, cd* out, std::size_t n) {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (active_isa() == Isa::avx2) return avx2::scale(alpha, x, out, n);
#endif
    ref::scale(alpha, x, out, n);
}

void abs2(const cd* a, double* out, std::size_t n) {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (active_isa() == Isa::avx2) return avx2::abs2(a, out, n);
#endif
    ref::abs2(a, out, n);
}

double norm2(const cd* a, std::size_t n) {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (active_isa() == Isa::avx2) return avx2::norm2(a, n);
#endif
    return ref::norm2(a, n);
}

double weighted_norm2(const double* w, const cd* a, std::size_t n) {
#ifdef KDNLS_HAVE_AVX2_LANE
    if (active_isa() == Isa::avx2) return avx2::weighted_norm2(w, a, n);
#endif
    return ref::weighted_norm2(w, a, n);
}

} // namespace kdnls::kernels
