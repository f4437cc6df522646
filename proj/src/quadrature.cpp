#include "whitham/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace whitham {

namespace {

// Filon moment factors against a quadratic interpolant on a panel of
// half-width h, theta = omega * h:
//   S = sin(theta)/theta
//   B = (sin(theta) - theta cos(theta)) / theta^2
//   C = (2 theta cos(theta) + (theta^2 - 2) sin(theta)) / theta^3
// Series branches avoid cancellation for small theta.
struct FilonFactors {
    double S, B, C;
};

FilonFactors filon_factors(double theta) {
    FilonFactors f;
    const double t2 = theta * theta;
    if (std::abs(theta) < 0.05) {
        f.S = 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0;
        f.B = theta * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0);
        f.C = 1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0;
    } else {
        const double s = std::sin(theta), c = std::cos(theta);
        f.S = s / theta;
        f.B = (s - theta * c) / t2;
        f.C = (2.0 * theta * c + (t2 - 2.0) * s) / (t2 * theta);
    }
    return f;
}

enum class Osc { cos, sin };

double filon_panel(const std::function<double(double)>& f, double a, double b,
                   double omega, Osc kind) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double f0 = f(a), f1 = f(mid), f2 = f(b);
    const auto m = filon_factors(omega * h);
    const double cm = std::cos(omega * mid), sm = std::sin(omega * mid);
    if (kind == Osc::cos)
        return 2.0 * h * f1 * m.S * cm - h * (f2 - f0) * m.B * sm +
               h * (f2 - 2.0 * f1 + f0) * m.C * cm;
    return 2.0 * h * f1 * m.S * sm + h * (f2 - f0) * m.B * cm +
           h * (f2 - 2.0 * f1 + f0) * m.C * sm;
}

double filon_recurse(const std::function<double(double)>& f, double a,
                     double b, double omega, Osc kind, double whole,
                     double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = filon_panel(f, a, mid, omega, kind);
    const double right = filon_panel(f, mid, b, omega, kind);
    const double split = left + right;
    if (depth <= 0 || std::abs(split - whole) <= tol)
        return split;
    return filon_recurse(f, a, mid, omega, kind, left, 0.5 * tol, depth - 1) +
           filon_recurse(f, mid, b, omega, kind, right, 0.5 * tol, depth - 1);
}

double filon(const std::function<double(double)>& f, double a, double b,
             double omega, double tol, int initial_panels, Osc kind) {
    if (!(b > a))
        return 0.0;
    double total = 0.0;
    const double w = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double pa = a + i * w, pb = a + (i + 1) * w;
        const double whole = filon_panel(f, pa, pb, omega, kind);
        total += filon_recurse(f, pa, pb, omega, kind, whole,
                               tol / initial_panels, 32);
    }
    return total;
}

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double lm = 0.5 * (a + mid), rm = 0.5 * (mid + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb);
    const double split = left + right;
    if (depth <= 0 || std::abs(split - whole) <= 15.0 * tol)
        return split + (split - whole) / 15.0;
    return simpson_recurse(f, a, mid, fa, flm, fm, left, 0.5 * tol,
                           depth - 1) +
           simpson_recurse(f, mid, b, fm, frm, fb, right, 0.5 * tol,
                           depth - 1);
}

} // namespace

double filon_cos(const std::function<double(double)>& f, double a, double b,
                 double omega, double tol, int initial_panels) {
    return filon(f, a, b, omega, tol, initial_panels, Osc::cos);
}

double filon_sin(const std::function<double(double)>& f, double a, double b,
                 double omega, double tol, int initial_panels) {
    return filon(f, a, b, omega, tol, initial_panels, Osc::sin);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
    if (!(b > a))
        return 0.0;
    const double mid = 0.5 * (a + b);
    const double fa = f(a), fm = f(mid), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: n >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from Chebyshev initial guesses.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 =
                    ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

double gauss(const std::function<double(double)>& f, double a, double b,
             int n) {
    const auto& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

} // namespace whitham
