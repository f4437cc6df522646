#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "whitham/evolution.hpp"

#include <cmath>
#include <complex>

using namespace whitham;

namespace {

SpectralField from_function(const Grid& g,
                            const std::function<double(double)>& f) {
    ArrayXd v(g.size());
    for (int j = 0; j < g.size(); ++j)
        v[j] = f(g.point(j));
    return SpectralField(g, std::move(v));
}

const Grid& solve_grid() {
    static const Grid g(50.0, 1 << 13);
    return g;
}

const SolitaryWave& wave_11() {
    static const SolitaryWave w =
        petviashvili_solve(WaveSpeed(1.1), solve_grid(), 1e-11);
    return w;
}

} // namespace

TEST_CASE("stability bound formula") {
    const Grid g(50.0, 1 << 12);
    ArrayXd v = ArrayXd::Constant(g.size(), 0.2);
    const SpectralField u(g, std::move(v));
    CHECK(stability_bound(u) ==
          doctest::Approx(0.5 * g.spacing() / (2.0 * 0.2 + 1.0)));
}

TEST_CASE("step rejects a time step beyond the bound") {
    const Grid g(50.0, 1 << 12);
    const SpectralField u = from_function(
        g, [](double x) { return 0.3 * std::exp(-x * x); });
    CHECK_THROWS_AS(step(u, 2.0 * stability_bound(u)), std::invalid_argument);
}

TEST_CASE("zero and constant states are fixed points") {
    const Grid g(50.0, 1 << 12);
    const SpectralField z = SpectralField::zero(g);
    CHECK(step(z, 1e-3).values().abs().maxCoeff() == 0.0);

    ArrayXd v = ArrayXd::Constant(g.size(), 0.25);
    const SpectralField c(g, std::move(v));
    CHECK((step(c, 1e-3).values() - c.values()).abs().maxCoeff() <= 1e-14);
}

TEST_CASE("one step of a small sine matches the linear propagator") {
    const Grid g(50.0, 1 << 12);
    const int k = 8;
    const double xi = g.frequencies()[k];
    const double a = 1e-3;
    const SpectralField u =
        from_function(g, [&](double x) { return a * std::sin(xi * x); });
    const double dt = 1e-3;
    const SpectralField u1 = step(u, dt);
    const double m = whitham_symbol(xi);
    for (int j = 0; j < g.size(); j += 7) {
        const double x = g.point(j);
        const double exact = a * std::sin(xi * (x - m * dt));
        CHECK(std::abs(u1.values()[j] - exact) <= 1e-8);
    }
}

TEST_CASE("linear-regime phase speed equals the symbol") {
    const Grid g(50.0, 1 << 12);
    const int k = 8;
    const double xi = g.frequencies()[k];
    const double a = 1e-6;
    const SpectralField u0 =
        from_function(g, [&](double x) { return a * std::cos(xi * x); });
    const double T = 1.0;
    auto [state, snaps] = evolve(u0, T, 1e-3, 2);
    const std::complex<double> ratio =
        state.u.coefficients()[k] / u0.coefficients()[k];
    const double speed = -std::arg(ratio) / (xi * T);
    CHECK(speed == doctest::Approx(whitham_symbol(xi)).epsilon(1e-6));
}

TEST_CASE("evolve with T = 0 returns the input") {
    const Grid g(50.0, 1 << 12);
    const SpectralField u0 = from_function(
        g, [](double x) { return 0.1 * std::exp(-x * x); });
    auto [state, snaps] = evolve(u0, 0.0, 1e-3, 5);
    CHECK(state.t == 0.0);
    CHECK((state.u.values() - u0.values()).abs().maxCoeff() == 0.0);
    REQUIRE(!snaps.empty());
    CHECK(snaps.front().t == 0.0);
}

TEST_CASE("time stepping converges at fourth order") {
    const Grid g(50.0, 1 << 12);
    const SpectralField u0 = from_function(
        g, [](double x) { return 0.2 * std::exp(-x * x); });
    const double T = 0.4;
    auto coarse = evolve(u0, T, 4e-3, 2).first;
    auto medium = evolve(u0, T, 2e-3, 2).first;
    auto fine = evolve(u0, T, 1e-3, 2).first;
    const double e1 =
        (coarse.u.values() - medium.u.values()).abs().maxCoeff();
    const double e2 =
        (medium.u.values() - fine.u.values()).abs().maxCoeff();
    REQUIRE(e2 > 0.0);
    CHECK(std::log2(e1 / e2) >= 3.5);
}

TEST_CASE("invariants are conserved on a smooth run") {
    const Grid g(50.0, 1 << 12);
    const SpectralField u0 = from_function(
        g, [](double x) { return 0.2 * std::exp(-x * x); });
    auto [state, snaps] = evolve(u0, 2.0, 0.9 * stability_bound(u0), 5);
    const auto& log = state.invariants_log;
    REQUIRE(log.size() >= 2);
    const double m0 = log.front().mass, p0 = log.front().momentum;
    for (const auto& s : log) {
        CHECK(std::abs(s.mass - m0) <= 1e-10 * std::abs(m0));
        CHECK(std::abs(s.momentum - p0) <= 1e-10 * std::abs(p0));
    }
}

TEST_CASE("the computed wave travels rigidly") {
    const SolitaryWave& w = wave_11();
    const EvolutionReport report =
        verify_traveling(w, 2.0, 0.9 * stability_bound(w.phi));
    CHECK(report.traveling_error <= 1e-6);
    CHECK(report.mass_drift <= 1e-10);
    CHECK(report.momentum_drift <= 1e-10);
    CHECK(report.axis.speed_fit == doctest::Approx(1.1).epsilon(1e-3));
    for (double e : report.axis.symmetry_error)
        CHECK(e <= 1e-6);
}

TEST_CASE("a perturbed profile does not travel rigidly") {
    const SolitaryWave& w = wave_11();
    ArrayXd v = w.phi.values();
    const Grid& g = w.phi.grid();
    for (int j = 0; j < g.size(); ++j) {
        const double s = 1.0 / std::cosh(g.point(j) - 3.0);
        // small enough to keep a single dominant crest, large enough
        // to break rigid translation well beyond the 1e-2 threshold
        v[j] += 0.02 * s * s;
    }
    SolitaryWave perturbed{SpectralField(g, std::move(v)),
                           w.c,
                           w.residual_physical,
                           w.residual_convolution,
                           w.iterations,
                           true,
                           w.stabilizer};
    const EvolutionReport report = verify_traveling(
        perturbed, 2.0, 0.9 * stability_bound(perturbed.phi));
    CHECK(report.traveling_error > 1e-2);
}

TEST_CASE("verify_traveling input validation") {
    const SolitaryWave& w = wave_11();
    // c T beyond a quarter period
    CHECK_THROWS_AS(verify_traveling(w, 50.0, 1e-3), std::invalid_argument);
    SolitaryWave bad = w;
    bad.converged = false;
    CHECK_THROWS_AS(verify_traveling(bad, 1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("verify_traveling at T = 0 reports zero error") {
    const EvolutionReport report = verify_traveling(wave_11(), 0.0, 1e-3);
    CHECK(report.traveling_error <= 1e-14);
}

TEST_CASE("a generic pulse loses its symmetry axis") {
    const Grid g(50.0, 1 << 12);
    const SpectralField u0 = from_function(
        g, [](double x) { return 0.3 * std::exp(-x * x); });
    auto [state, snaps] = evolve(u0, 20.0, 0.9 * stability_bound(u0), 20);
    const AxisTrack track = symmetry_axis_track(snaps);
    REQUIRE(!track.symmetry_error.empty());
    CHECK(track.symmetry_error.front() <= 1e-8);
    CHECK(track.symmetry_error.back() > 1e-3);
}

TEST_CASE("axis tracking on trivial and ambiguous snapshots") {
    const Grid g(50.0, 1 << 12);
    SUBCASE("an even pulse sits at the origin") {
        const SpectralField u = from_function(
            g, [](double x) { return 0.1 * std::exp(-x * x); });
        const AxisTrack track = symmetry_axis_track({{0.0, u}});
        REQUIRE(track.lambda.size() == 1);
        CHECK(std::abs(track.lambda[0]) <= g.spacing());
    }
    SUBCASE("two equal crests are ambiguous") {
        const SpectralField u = from_function(g, [](double x) {
            const double s1 = 1.0 / std::cosh(x - 5.0);
            const double s2 = 1.0 / std::cosh(x + 5.0);
            return s1 * s1 + s2 * s2;
        });
        CHECK_THROWS_AS(symmetry_axis_track({{0.0, u}}), std::runtime_error);
    }
}
