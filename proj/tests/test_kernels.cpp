#include "kdnls/kernels.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace kdnls;
namespace kernels = kdnls::kernels;
using kernels::cd;
using kernels::Isa;

namespace {

std::vector<cd> random_array(size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    std::vector<cd> v(n);
    for (auto& c : v) c = cd(dist(rng), dist(rng));
    return v;
}

// The vectorized lane may contract with FMA, so compare to a few ulps.
void check_close(const std::vector<cd>& a, const std::vector<cd>& b) {
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1.0 + std::abs(a[i])));
}

} // namespace

TEST_CASE("dispatched kernels match the scalar reference") {
    if (!kernels::isa_available(Isa::avx2)) {
        MESSAGE("avx2 unavailable; dispatch is scalar-only on this host");
        return;
    }
    std::mt19937_64 rng(7);
    for (size_t n : {1u, 2u, 3u, 8u, 17u, 64u, 129u}) {
        auto a = random_array(n, rng);
        auto b = random_array(n, rng);
        auto w = std::vector<double>(n);
        for (auto& x : w) x = std::abs(std::normal_distribution<double>()(rng));
        const cd alpha(0.3, -1.7);

        std::vector<cd> out_ref(n), out_simd(n);
        kernels::ref::cmul(a.data(), b.data(), out_ref.data(), n);
        kernels::force_isa(Isa::avx2);
        kernels::cmul(a.data(), b.data(), out_simd.data(), n);
        check_close(out_ref, out_simd);

        auto y_ref = b, y_simd = b;
        kernels::ref::axpy(alpha, a.data(), y_ref.data(), n);
        kernels::axpy(alpha, a.data(), y_simd.data(), n);
        check_close(y_ref, y_simd);

        kernels::ref::scale(alpha, a.data(), out_ref.data(), n);
        kernels::scale(alpha, a.data(), out_simd.data(), n);
        check_close(out_ref, out_simd);

        std::vector<double> m_ref(n), m_simd(n);
        kernels::ref::abs2(a.data(), m_ref.data(), n);
        kernels::abs2(a.data(), m_simd.data(), n);
        for (size_t i = 0; i < n; ++i)
            CHECK(m_simd[i] == doctest::Approx(m_ref[i]).epsilon(1e-14));

        CHECK(kernels::norm2(a.data(), n) ==
              doctest::Approx(kernels::ref::norm2(a.data(), n)).epsilon(1e-13));
        CHECK(kernels::weighted_norm2(w.data(), a.data(), n) ==
              doctest::Approx(kernels::ref::weighted_norm2(w.data(), a.data(), n))
                  .epsilon(1e-13));
    }
}

TEST_CASE("forcing the scalar lane routes around the vector unit") {
    kernels::force_isa(Isa::scalar);
    CHECK(kernels::active_isa() == Isa::scalar);
    std::mt19937_64 rng(11);
    auto a = random_array(33, rng);
    auto b = random_array(33, rng);
    std::vector<cd> out(33), ref(33);
    kernels::cmul(a.data(), b.data(), out.data(), 33);
    kernels::ref::cmul(a.data(), b.data(), ref.data(), 33);
    for (size_t i = 0; i < 33; ++i) CHECK(out[i] == ref[i]);
    if (kernels::isa_available(Isa::avx2)) kernels::force_isa(Isa::avx2);
}
