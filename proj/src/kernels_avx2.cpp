// AVX2+FMA lane. Compiled with -mavx2 -mfma for this translation unit only;
// dispatch in kernels.cpp guarantees these run only on capable CPUs.
// Complex doubles are interleaved [re, im], two per __m256d.

#if defined(__x86_64__) || defined(_M_X64)

#include "kdnls/kernels.hpp"

#include <immintrin.h>

namespace kdnls::kernels::avx2 {

namespace {

// [a0 a1] * [b0 b1] for interleaved complex pairs.
inline __m256d cmul2(__m256d a, __m256d b) {
    __m256d b_re = _mm256_movedup_pd(b);          // [b0r b0r b1r b1r]
    __m256d b_im = _mm256_permute_pd(b, 0xF);     // [b0i b0i b1i b1i]
    __m256d a_sw = _mm256_permute_pd(a, 0x5);     // [a0i a0r a1i a1r]
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void cmul(const cd* a, const cd* b, cd* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(cd alpha, const cd* x, cd* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    __m256d va = _mm256_setr_pd(ar, ai, ar, ai);
    const double* px = reinterpret_cast<const double*>(x);
    double* py = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vy = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul2(vx, va)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(cd alpha, const cd* x, cd* out, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    __m256d va = _mm256_setr_pd(ar, ai, ar, ai);
    const double* px = reinterpret_cast<const double*>(x);
    double* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        _mm256_storeu_pd(po + 2 * i, cmul2(vx, va));
    }
    for (; i < n; ++i) out[i] = alpha * x[i];
}

void abs2(const cd* a, double* out, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d sq = _mm256_mul_pd(va, va);           // [r0² i0² r1² i1²]
        __m256d s = _mm256_hadd_pd(sq, sq);           // [r0²+i0², ., r1²+i1², .]
        out[i] = _mm_cvtsd_f64(_mm256_castpd256_pd128(s));
        out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(s, 1));
    }
    for (; i < n; ++i)
        out[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double norm2(const cd* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return s;
}

double weighted_norm2(const double* w, const cd* a, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m128d vw = _mm_loadu_pd(w + i);
        // duplicate each weight across its re/im slots
        __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(vw), 0x50);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(va, va), ww, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i)
        s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
    return s;
}

} // namespace kdnls::kernels::avx2

#endif // x86_64
