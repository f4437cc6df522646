#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "whitham/kernels.hpp"

#include <cmath>
#include <map>
#include <vector>

using namespace whitham;

namespace {

const Grid& default_grid() {
    static const Grid g(200.0, 1 << 16);
    return g;
}

const KernelTable& resolvent_table(double c) {
    static std::map<double, KernelTable> cache;
    auto it = cache.find(c);
    if (it == cache.end())
        it = cache
                 .emplace(c, synthesize_kernel(
                                 Multiplier::resolvent(WaveSpeed(c)),
                                 default_grid()))
                 .first;
    return it->second;
}

} // namespace

TEST_CASE("under-resolved grid is rejected") {
    CHECK_THROWS_AS(
        synthesize_kernel(Multiplier::whitham(), Grid(200.0, 1 << 12)),
        std::invalid_argument);
}

TEST_CASE("whitham kernel has unit mass") {
    const KernelTable k =
        synthesize_kernel(Multiplier::whitham(), default_grid());
    CHECK(k.mass() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("resolvent kernel mass equals the symbol at zero") {
    // integral of H_c = h_c(0) = 1/(c-1)
    CHECK(resolvent_table(1.5).mass() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("near-origin value matches the quadrature oracle") {
    const KernelTable& table = resolvent_table(1.5);
    const double oracle = oracles::resolvent_kernel(1e-3, 1.5);
    CHECK(table.value(1e-3) == doctest::Approx(oracle).epsilon(5e-4));
    for (double x = 1e-3; x <= 1e-2; x *= 1.5)
        CHECK(std::sqrt(x) * table.value(x) ==
              doctest::Approx(std::sqrt(x) * oracles::resolvent_kernel(x, 1.5))
                  .epsilon(0.02));
}

TEST_CASE("kernel values are even") {
    const KernelTable& table = resolvent_table(1.5);
    const Grid& g = table.grid();
    const int n = g.size();
    const double scale = std::abs(table.value_at(n / 2 + 1));
    for (int off : {1, 2, 5, 100, 5000, n / 4}) {
        const double right = table.value_at(n / 2 + off);
        const double left = table.value_at(n / 2 - off);
        CHECK(std::abs(right - left) <= 1e-12 * scale);
    }
    // the sampled regular part is even about x = 0 as well
    for (int off : {1, 7, 333, 8000})
        CHECK(std::abs(table.regular_part()[n / 2 + off] -
                       table.regular_part()[n / 2 - off]) <=
              1e-12 * table.regular_part().abs().maxCoeff());
}

TEST_CASE("refinement stability of reconstructed values") {
    const KernelTable& coarse = resolvent_table(1.5);
    const KernelTable fine = synthesize_kernel(
        Multiplier::resolvent(WaveSpeed(1.5)), Grid(200.0, 1 << 17));
    const Grid& gc = coarse.grid();
    for (double target : {0.1, 1.0, 5.0}) {
        const int jc = gc.nearest_index(target);
        const double x = gc.point(jc); // shared lattice point
        const int jf = fine.grid().nearest_index(x);
        REQUIRE(fine.grid().point(jf) == doctest::Approx(x).epsilon(1e-14));
        // node values are limited by the truncated symbol tail
        CHECK(coarse.value_at(jc) ==
              doctest::Approx(fine.value_at(jf)).epsilon(1e-4));
    }
}

TEST_CASE("weighted integrability trend under refinement") {
    // alpha = 0.3, p = 1 stays bounded; alpha = 0, p = 2 keeps growing
    std::vector<double> norm_p1, norm_p2;
    for (int logn : {12, 14, 16}) {
        const Grid g(50.0, 1 << logn);
        const KernelTable table =
            synthesize_kernel(Multiplier::resolvent(WaveSpeed(1.5)), g);
        const double h = g.spacing();
        double p1 = 0.0, p2 = 0.0;
        for (int j = 0; j < g.size(); ++j) {
            if (j == g.size() / 2)
                continue; // the kernel is singular at x = 0
            const double x = std::abs(g.point(j));
            const double v = std::abs(table.value_at(j));
            p1 += h * std::pow(x, 0.3) * v;
            p2 += h * v * v;
        }
        norm_p1.push_back(p1);
        norm_p2.push_back(p2);
    }
    CHECK(std::abs(norm_p1[2] - norm_p1[0]) <= 0.05 * norm_p1[0]);
    CHECK(norm_p2[1] > norm_p2[0] * 1.02);
    CHECK(norm_p2[2] > norm_p2[1] * 1.02);
}

TEST_CASE("resolvent kernel is positive and decreasing") {
    CHECK(kernel_positivity_monotonicity(resolvent_table(1.2)).pass());
    CHECK(kernel_positivity_monotonicity(resolvent_table(3.0)).pass());
}

TEST_CASE("sign-changing symbol fails the shape check") {
    const KernelTable table = synthesize_kernel(
        [](double xi) { return std::cos(xi) * whitham_symbol(xi); }, 0.0,
        default_grid());
    const ShapeReport report = kernel_positivity_monotonicity(table);
    CHECK_FALSE(report.pass());
    CHECK(report.first_violation_x > 0.0);
}

TEST_CASE("complete monotonicity of the resolvent profile") {
    std::vector<double> points;
    for (int i = 0; i < 50; ++i)
        points.push_back(1e-2 * std::pow(1e3, i / 49.0));
    const CompleteMonotonicityReport report =
        check_complete_monotone(WaveSpeed(1.5), 4, points);
    CHECK(report.pass);
}

TEST_CASE("complete monotonicity harness on known functions") {
    std::vector<double> points;
    for (int i = 0; i < 30; ++i)
        points.push_back(0.05 * std::pow(200.0, i / 29.0));
    const auto decaying = check_complete_monotone(
        [](double x) { return std::exp(-x); }, 6, points);
    CHECK(decaying.pass);
    const auto increasing =
        check_complete_monotone([](double x) { return x; }, 6, points);
    CHECK_FALSE(increasing.pass);
    CHECK(increasing.first_failed_order == 1);
}

TEST_CASE("complete monotonicity argument validation") {
    CHECK_THROWS_AS(check_complete_monotone(WaveSpeed(1.5), 7, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_complete_monotone(WaveSpeed(1.5), 4, {60.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_complete_monotone(WaveSpeed(1.5), 4, {-1.0}),
                    std::invalid_argument);
}

TEST_CASE("decay-rate fit on exact exponentials") {
    std::vector<double> xs, e2, sech;
    for (int i = 0; i <= 400; ++i) {
        const double x = 1.0 + 9.0 * i / 400.0;
        xs.push_back(x);
        e2.push_back(std::exp(-2.0 * x));
        sech.push_back(1.0 / std::cosh(x));
    }
    CHECK(fit_decay_rate(xs, e2, 1.0, 5.0) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fit_decay_rate(xs, sech, 5.0, 10.0) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("decay-rate fit input validation") {
    std::vector<double> xs{1, 2, 3, 4, 5}, vs{1, 1, 1, 1, 1};
    CHECK_THROWS_AS(fit_decay_rate(xs, vs, 1.0, 5.0), std::invalid_argument);
    std::vector<double> xs2, vs2;
    for (int i = 0; i < 20; ++i) {
        xs2.push_back(1.0 + 0.2 * i);
        vs2.push_back(i == 10 ? -1.0 : std::exp(-xs2.back()));
    }
    CHECK_THROWS_AS(fit_decay_rate(xs2, vs2, 1.0, 5.0), std::domain_error);
}

TEST_CASE("fitted kernel tail rate beats 0.9 of the strip half-width") {
    const KernelTable& table = resolvent_table(1.2);
    CHECK(table.fitted_tail_rate() >=
          0.9 * strip_halfwidth(WaveSpeed(1.2)));
}
