// Quadrature utilities: Filon-type rules for oscillatory cosine/sine
// integrals and a general adaptive Simpson rule.
#pragma once

#include <functional>
#include <vector>

namespace whitham {

// Integral of f(t) * cos(omega * t) over [a, b].  The envelope f must
// be smooth on [a, b]; the oscillation is integrated exactly against a
// piecewise quadratic interpolant of f (Filon-Simpson), with panels
// halved until two refinements agree to tol.
double filon_cos(const std::function<double(double)>& f, double a, double b,
                 double omega, double tol, int initial_panels = 8);

// Same for f(t) * sin(omega * t).
double filon_sin(const std::function<double(double)>& f, double a, double b,
                 double omega, double tol, int initial_panels = 8);

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 40);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Gauss-Legendre quadrature of f over [a, b] with n points.
double gauss(const std::function<double(double)>& f, double a, double b,
             int n = 16);

} // namespace whitham
