#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whitham/steady.hpp"

#include <cmath>

using namespace whitham;

namespace {

const Grid& default_grid() {
    static const Grid g(200.0, 1 << 16);
    return g;
}

const SolitaryWave& wave_11() {
    static const SolitaryWave w =
        petviashvili_solve(WaveSpeed(1.1), default_grid(), 1e-11);
    return w;
}

} // namespace

TEST_CASE("galilean normalization examples") {
    const Grid g(20.0, 64);
    const SpectralField phi = SpectralField::zero(g);

    SUBCASE("already normalized") {
        const NormalizedTriple r = normalize_galilean(phi, 2.0, 0.0);
        CHECK(r.shift.gamma == 0.0);
        CHECK(r.triple.c == 2.0);
        CHECK(r.triple.B == 0.0);
    }
    SUBCASE("quadratic-formula oracle at c=2, B=0.1") {
        // smaller-|gamma| root of gamma^2 + gamma - 0.1 = 0
        const double expected = (-1.0 + std::sqrt(1.4)) / 2.0;
        const NormalizedTriple r = normalize_galilean(phi, 2.0, 0.1);
        CHECK(r.shift.gamma == doctest::Approx(expected).epsilon(1e-12));
        CHECK(r.triple.c == doctest::Approx(2.0 + 2.0 * expected));
        CHECK(std::abs(r.triple.B) < 1e-15);
    }
    SUBCASE("round trip restores the triple") {
        const GalileanShift shift{0.3};
        const FlowTriple start{phi, 1.7, 0.25};
        const FlowTriple there = shift.apply(start);
        const FlowTriple back = shift.inverse().apply(there);
        CHECK(back.c == doctest::Approx(start.c).epsilon(1e-15));
        CHECK(back.B == doctest::Approx(start.B).epsilon(1e-14));
        CHECK((back.phi.values() - start.phi.values()).abs().maxCoeff() <
              1e-15);
    }
    SUBCASE("negative discriminant is rejected") {
        // (c-1)^2 + 4B < 0
        CHECK_THROWS_AS(normalize_galilean(phi, 1.5, -0.2), std::domain_error);
    }
}

TEST_CASE("petviashvili input validation") {
    const Grid& g = default_grid();
    CHECK_THROWS_AS(petviashvili_solve(WaveSpeed(3.5), g, 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(petviashvili_solve(WaveSpeed(1.1), g, 1e-14),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        petviashvili_solve(WaveSpeed(1.1), g, SpectralField::zero(g), 1e-10),
        std::invalid_argument);
}

TEST_CASE("converged wave at c=1.1 satisfies the pointwise bounds") {
    const SolitaryWave& w = wave_11();
    CHECK(w.converged);
    CHECK(w.iterations > 0);
    CHECK(w.phi.values().minCoeff() > 0.0);
    CHECK(w.phi.values().maxCoeff() < 1.1);
    CHECK(std::abs(w.stabilizer - 1.0) <= 1e-10);
    CHECK(w.residual_physical <= 1e-9);
    CHECK(w.residual_convolution <= 1e-9);

    // single crest
    const ArrayXd& v = w.phi.values();
    const double sup = v.maxCoeff();
    int crests = 0;
    for (int j = 1; j < w.phi.grid().size() - 1; ++j)
        if (v[j] > v[j - 1] && v[j] > v[j + 1] && v[j] > 1e-6 * sup)
            ++crests;
    CHECK(crests == 1);
}

TEST_CASE("wave is even about the centered crest") {
    const SolitaryWave& w = wave_11();
    const SpectralField mirrored = reflect(w.phi, 0.0);
    CHECK((mirrored.values() - w.phi.values()).abs().maxCoeff() <=
          1e-8 * w.phi.values().maxCoeff());
}

TEST_CASE("infimum bound: min phi within [0, c-1]") {
    const SolitaryWave& w = wave_11();
    const double lo = w.phi.values().minCoeff();
    CHECK(lo >= 0.0);
    CHECK(lo <= 0.1 + 1e-8);
}

TEST_CASE("small-amplitude limit at c=1.05") {
    const SolitaryWave w =
        petviashvili_solve(WaveSpeed(1.05), default_grid(), 1e-11);
    const double expected = 1.5 * 0.05;
    CHECK(w.phi.values().maxCoeff() ==
          doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("residual agreement between the two evaluations") {
    const SolitaryWave& w = wave_11();
    CHECK(std::abs(w.residual_physical - w.residual_convolution) <=
          1e-6 * std::max(1.0, w.residual_physical));
}

TEST_CASE("residual of trivial profiles") {
    const Grid g(200.0, 1 << 14); // xi_max ~ 128, enough for the table
    const KernelTable table =
        synthesize_kernel(Multiplier::resolvent(WaveSpeed(1.5)), g);

    SUBCASE("zero profile") {
        const SolitaryWave w{SpectralField::zero(g), 1.5, 0, 0, 0, true, 1.0};
        const auto [a, b] = residual(w, table);
        CHECK(a <= 1e-14);
        CHECK(b <= 1e-14);
    }
    SUBCASE("constant profile phi = c-1") {
        ArrayXd v = ArrayXd::Constant(g.size(), 0.5);
        const SolitaryWave w{SpectralField(g, std::move(v)), 1.5, 0, 0, 0,
                             true, 1.0};
        const auto [a, b] = residual(w, table);
        CHECK(a <= 1e-12);
        CHECK(b <= 1e-12);
    }
}

TEST_CASE("grid refinement leaves the amplitude unchanged") {
    const SolitaryWave& coarse = wave_11();
    const SolitaryWave fine =
        petviashvili_solve(WaveSpeed(1.1), Grid(200.0, 1 << 17), 1e-11);
    CHECK(std::abs(coarse.phi.values().maxCoeff() -
                   fine.phi.values().maxCoeff()) <= 1e-8);
}

TEST_CASE("continuation sweep") {
    SUBCASE("empty input") {
        CHECK(continuation_sweep({}, default_grid(), 1e-10).empty());
    }
    SUBCASE("unsorted input is rejected") {
        CHECK_THROWS_AS(continuation_sweep({1.1, 1.05}, default_grid(), 1e-10),
                        std::invalid_argument);
    }
    SUBCASE("amplitudes increase along the branch") {
        const auto waves =
            continuation_sweep({1.05, 1.1, 1.15}, default_grid(), 1e-10);
        REQUIRE(waves.size() == 3);
        CHECK(waves[0].phi.values().maxCoeff() <
              waves[1].phi.values().maxCoeff());
        CHECK(waves[1].phi.values().maxCoeff() <
              waves[2].phi.values().maxCoeff());
        for (const auto& w : waves)
            CHECK(w.converged);
    }
}
