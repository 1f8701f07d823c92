#include "kdnls/errors.hpp"
#include "kdnls/field.hpp"
#include "kdnls/kernels.hpp"
#include "kdnls/multiplier.hpp"
#include "kdnls/norms.hpp"
#include "kdnls/product.hpp"
#include "kdnls/spectrum_io.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace kdnls;

namespace {

double rel_l2_diff(const Field& a, const Field& b) {
    return l2_norm(a - b) / std::max(l2_norm(b), 1e-300);
}

Field cos_field(const GridSpec& g) {
    return Field::from_modes(g, {{1, cd(0.5, 0.0)}, {-1, cd(0.5, 0.0)}});
}

Field sin_field(const GridSpec& g) {
    return Field::from_modes(g, {{1, cd(0.0, -0.5)}, {-1, cd(0.0, 0.5)}});
}

} // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(6), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(48), std::invalid_argument);
    GridSpec g(16);
    CHECK(g.min_mode() == -8);
    CHECK(g.max_mode() == 7);
    CHECK(g.index_of(-1) == 15);
    CHECK(g.mode_of(8) == -8);
}

TEST_CASE("physical/spectral round trip and Parseval") {
    GridSpec g(64);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> dist;
    std::vector<cd> samples(64);
    for (auto& s : samples) s = cd(dist(rng), dist(rng));
    Field u = Field::from_physical(g, samples);
    CHECK(u.repr() == Repr::both_synced);

    auto back = u.to_physical();
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < samples.size(); ++j) {
        num += std::norm(back[j] - samples[j]);
        den += std::norm(samples[j]);
    }
    CHECK(std::sqrt(num / den) <= 1e-13);

    // Round trip through from_spectral as well.
    Field v = Field::from_spectral(g, std::vector<cd>(u.spectral().begin(),
                                                      u.spectral().end()));
    auto again = v.to_physical();
    num = 0.0;
    for (size_t j = 0; j < samples.size(); ++j) num += std::norm(again[j] - samples[j]);
    CHECK(std::sqrt(num / den) <= 1e-13);

    const double parseval = kTwoPi * kernels::norm2(u.spectral().data(), 64);
    CHECK(parseval == doctest::Approx(oracles::quadrature_mass(u)).epsilon(1e-12));
}

TEST_CASE("multiplier examples from the operator table") {
    GridSpec g(32);
    SUBCASE("H(cos x) = sin x") {
        CHECK(rel_l2_diff(hilbert(cos_field(g)), sin_field(g)) <= 1e-15);
        CHECK(hilbert(cos_field(g)).mode(1) == cd(0.0, -0.5));
        CHECK(hilbert(cos_field(g)).mode(-1) == cd(0.0, 0.5));
    }
    SUBCASE("P+(e^{ix} + 2 + e^{-ix}) = e^{ix}") {
        Field f = Field::from_modes(g, {{1, 1.0}, {0, 2.0}, {-1, 1.0}});
        Field expect = Field::from_modes(g, {{1, 1.0}});
        CHECK(rel_l2_diff(proj_plus(f), expect) <= 1e-15);
    }
    SUBCASE("antiderivative of sin x is -cos x") {
        Field expect = cd(-1.0, 0.0) * cos_field(g);
        CHECK(rel_l2_diff(antiderivative(sin_field(g)), expect) <= 1e-15);
    }
    SUBCASE("D^{1/2} e^{2ix} = sqrt(2) e^{2ix}") {
        Field f = Field::from_modes(g, {{2, 1.0}});
        Field out = fractional_derivative(f, 0.5);
        CHECK(std::abs(out.mode(2) - cd(std::sqrt(2.0), 0.0)) <= 1e-15);
    }
}

TEST_CASE("multiplier error paths") {
    GridSpec g(16);
    Field charged = Field::from_modes(g, {{0, 1.0}, {1, 1.0}});
    CHECK_THROWS_AS(antiderivative(charged), AntiderivativeOfNonMeanZero);
    CHECK_THROWS_AS(proj_leq(charged, -1), InvalidCutoff);
    // propagator guard belongs to the dissipative case only
    CHECK_THROWS_AS(apply_multiplier(charged, PropagatorSpec{-1.0, 0.5, 0.0}),
                    BackwardDissipativeStep);
    CHECK_NOTHROW(apply_multiplier(charged, PropagatorSpec{-1.0, 0.0, 0.0}));
}

TEST_CASE("operator algebra invariants") {
    GridSpec g(64);
    std::mt19937_64 rng(3);
    Field u = oracles::random_band_limited(g, 20, 1.5, rng);

    SUBCASE("P+ + P- + P0 = Id") {
        Field sum = proj_plus(u) + proj_minus(u) + proj_zero(u);
        CHECK(rel_l2_diff(sum, u) <= 1e-14);
    }
    SUBCASE("H and d/dx commute") {
        CHECK(l2_norm(hilbert(derivative(u)) - derivative(hilbert(u))) <=
              1e-13 * sobolev_norm(u, 1.0));
    }
    SUBCASE("D_x = -i dx P+ + i dx P-") {
        Field lhs = fractional_derivative(u, 1.0);
        Field rhs = cd(0.0, -1.0) * derivative(proj_plus(u)) +
                    cd(0.0, 1.0) * derivative(proj_minus(u));
        CHECK(l2_norm(lhs - rhs) <= 1e-13 * sobolev_norm(u, 1.0));
    }
    SUBCASE("H^2 = -P_nonzero") {
        Field lhs = hilbert(hilbert(u));
        Field rhs = cd(-1.0, 0.0) * proj_nonzero(u);
        CHECK(l2_norm(lhs - rhs) <= 1e-13 * l2_norm(u));
    }
}

TEST_CASE("dealiased products") {
    GridSpec g(32);
    SUBCASE("single-mode product is exact") {
        Field e1 = Field::from_modes(g, {{1, 1.0}});
        Field out = dealiased_product(e1, e1);
        CHECK(std::abs(out.mode(2) - cd(1.0, 0.0)) <= 1e-15);
        CHECK(l2_norm(out) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));
    }
    SUBCASE("|u|^2 matches the direct convolution oracle") {
        Field u = Field::from_modes(g, {{1, 1.0}, {2, 1.0}});
        Field m = abs_squared(u);
        Field expect = oracles::direct_convolution(u, u.conjugate());
        CHECK(rel_l2_diff(m, expect) <= 1e-14);
    }
    SUBCASE("identity chain of five factors") {
        Field one = Field::from_modes(g, {{0, 1.0}});
        const Field fs[] = {one, one, one, one, one};
        Field out = dealiased_product(std::span<const Field>(fs, 5));
        CHECK(rel_l2_diff(out, one) <= 1e-15);
    }
    SUBCASE("grid mismatch") {
        Field a = Field::zero(GridSpec(32));
        Field b = Field::zero(GridSpec(64));
        CHECK_THROWS_AS(dealiased_product(a, b), GridMismatch);
    }
    SUBCASE("band-limited triple products equal the exact convolution") {
        GridSpec big(128);
        std::mt19937_64 rng(9);
        for (int trial = 0; trial < 5; ++trial) {
            Field a = oracles::random_band_limited(big, 10, 1.0, rng);
            Field b = oracles::random_band_limited(big, 10, 1.0, rng);
            Field c = oracles::random_band_limited(big, 9, 1.0, rng);
            Field chain = dealiased_product(a, b, c);
            Field expect =
                oracles::direct_convolution(oracles::direct_convolution(a, b), c);
            CHECK(rel_l2_diff(chain, expect) <= 1e-13);
        }
    }
}

TEST_CASE("sobolev norms") {
    GridSpec g(32);
    SUBCASE("constant field") {
        Field one = Field::from_modes(g, {{0, 1.0}});
        CHECK(sobolev_norm(one, 0.7) ==
              doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));
    }
    SUBCASE("single mode at s = 1") {
        Field e1 = Field::from_modes(g, {{1, 1.0}});
        CHECK(sobolev_norm(e1, 1.0) ==
              doctest::Approx(std::sqrt(kTwoPi) * std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("random 8-mode field matches the defining sum") {
        std::mt19937_64 rng(5);
        Field u = oracles::random_band_limited(g, 4, 0.5, rng);
        CHECK(sobolev_norm(u, 0.3) ==
              doctest::Approx(oracles::direct_sobolev(u, 0.3)).epsilon(1e-12));
    }
}

TEST_CASE("spectrum snapshot round trip") {
    namespace fs = std::filesystem;
    GridSpec g(32);
    std::mt19937_64 rng(12);
    Field u = oracles::random_band_limited(g, 12, 0.8, rng);
    const fs::path dir = fs::temp_directory_path() / "kdnls_io_test";
    fs::create_directories(dir);
    const fs::path csv = dir / "snap.csv";
    write_spectrum_csv(u, csv, 0.75);
    double t = 0.0;
    Field back = read_spectrum_csv(csv, &t);
    CHECK(t == doctest::Approx(0.75));
    CHECK(back.grid().num_modes() == 32);
    CHECK(rel_l2_diff(back, u) <= 1e-15);
    fs::remove_all(dir);
}
