// Certification of the symmetry, single-crest, and decay properties
// of computed profiles, plus brute-force oracles for the auxiliary
// moment and weight lemmata.
#pragma once

#include "whitham/grid.hpp"
#include "whitham/kernels.hpp"
#include "whitham/steady.hpp"

#include <map>
#include <utility>
#include <vector>

namespace whitham {

// Verdict of the symmetry battery for a single profile.
struct SymmetryReport {
    double crest_location;   // sub-grid crest via quadratic interpolation
    double reflection_error; // sup |phi(2 l0 - x) - phi(x)| / sup phi
    int crest_count;         // strict local maxima above 1e-6 sup phi
    bool monotone_tail;      // nonincreasing on [l0, l0 + L/2]
    double moving_plane_sup; // largest admissible reflection axis
    bool degenerate;         // moving-plane scan found no interior axis
    double tolerance;
    double grid_spacing;
    bool pass() const;
};

// Symmetry battery: crest localization, spectral reflection error,
// crest count, tail monotonicity, and the moving-plane scan.
// errors: flat profile -> degenerate-input error.
SymmetryReport verify_symmetry(const SpectralField& phi, double tol);

struct MovingPlaneResult {
    double lambda_star;
    bool degenerate; // scan never held with nonvacuous content
};

// Slide a reflection axis from the left: for each grid candidate
// lambda, require phi(x) >= phi(2 lambda - x) - eps for all grid
// x > lambda (eps = 1e-10 sup phi); return the largest lambda such
// that the requirement holds for every lambda' <= lambda.
// errors: profile not decayed at the boundary -> truncation error.
MovingPlaneResult moving_plane_scan(const SpectralField& phi);

// Minimum over half-line points x >= lambda of
//   h * sum_{y > lambda} (H(x - y) - H(x + y - 2 lambda)) f(y)
// with cell-averaged kernel values.  pre: f odd about lambda (so the
// full convolution reduces to this form); 2 lambda on the lattice.
double half_line_convolution_min(const SpectralField& f, double lambda,
                                 const KernelTable& table);

struct TouchingReport {
    enum class Verdict { identically_equal, strictly_ordered };
    Verdict verdict;
    double min_integral; // min of the half-line convolution
    bool sum_below_speed; // phi1 + phi2 < c everywhere (ordered case)
};

// Half-space touching dichotomy for an ordered pair phi1 >= phi2 on
// [lambda, inf): either the pair coincides there, or it is strictly
// ordered with nonnegative half-line convolution of phi1^2 - phi2^2.
// pre: phi1 >= phi2 - eps on the half-line; phi1^2 - phi2^2 odd about
// lambda within eps; errors name the failing hypothesis.
TouchingReport touching_check(const SpectralField& phi1,
                              const SpectralField& phi2, double lambda,
                              const KernelTable& table, double speed);

// Discrete weighted norm of |x|^l phi in L_q: trapezoid for finite q,
// max for q = infinity.
double weighted_norm(const SpectralField& phi, double l, double q);

// Exact big-integer check of (qn)! <= [q^n n!]^q.
// pre: 0 <= n <= 20, 1 <= q <= 5.
bool factorial_inequality_holds(int n, int q);

// Sup over the grid of the difference between x^n (f*g)(x) and
// sum_j binom(n,j) ((.)^{n-j} f * (.)^j g)(x), both sides by discrete
// convolution.  pre: n <= 6; f, g decayed at the grid boundary.
double convolution_moment_identity(const SpectralField& f,
                                   const SpectralField& g, int n);

// Maximum over the probe set of the normalized weight ratio
//   [int |y|^l ((1+eps|y|)^m (1+|x-y|)^m)^{-1} dy] (1+eps|x|)^m |x|^{-l},
// certifying a finite uniform constant.  pre: 0 < l < m - 1; |x| >= 1.
double weight_inequality_constant(double l, double m,
                                  const std::vector<double>& x_range,
                                  const std::vector<double>& eps_set);

// Tail-decay certificate for a computed wave: fitted exponential rate
// over [x_lo, x_hi] against the strip half-width, plus a battery of
// weighted norms.
struct DecayReport {
    double fitted_rate;
    double reference_rate; // strip half-width for the wave's speed
    double window_lo, window_hi;
    std::map<std::pair<double, double>, double> weighted_norms; // (l,q)
    bool pass() const;
};

DecayReport verify_decay(const SolitaryWave& wave, double x_lo, double x_hi,
                         const std::vector<std::pair<double, double>>& lq);

} // namespace whitham
