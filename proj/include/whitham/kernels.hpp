// Kernel synthesis: invert a Fourier multiplier onto a grid with the
// |x|^{-1/2} near-origin singularity split off in closed form, and
// certify positivity, monotonicity, complete monotonicity, and
// exponential tails of the result.
#pragma once

#include "whitham/grid.hpp"
#include "whitham/symbols.hpp"

#include <functional>
#include <vector>

namespace whitham {

// Sampled kernel with explicit singular-part metadata.  The total
// kernel value at x != 0 is regular_part(x) + singular closed form
//   a/sqrt(2 pi |x|) - (a/pi) G(|x|),
// where G is the cosine transform of the cutoff envelope
// exp(-(xi/4)^2) |xi|^{-1/2}, tabulated once by oscillatory
// quadrature.  Immutable after construction.
class KernelTable {
public:
    const Grid& grid() const { return grid_; }
    double singular_coefficient() const { return a_; }
    double fitted_tail_rate() const { return tail_rate_; }

    // Smooth remainder sampled at the grid points.
    const ArrayXd& regular_part() const { return regular_; }

    // Closed-form split part at arbitrary x != 0 (even in x).
    double singular_value(double x) const;

    // Full kernel at arbitrary x != 0; off the grid lattice the
    // regular part is evaluated by a direct spectral sum plus a
    // quadrature correction for the truncated symbol tail.
    double value(double x) const;

    // Full kernel at grid node j (x_j = -L + j h); infinite at x = 0.
    double value_at(int j) const;

    // Full kernel at lattice point x = k h for any integer k; zero
    // once |k h| >= L (the tail is below roundoff there).
    double lattice_value(long k) const;

    // Average of the kernel over the cell [x_j - h/2, x_j + h/2]:
    // exact moment for the |x|^{-1/2} part, midpoint for the rest.
    double cell_average(int j) const;

    // h * sum of cell averages: the integral over one period.
    double mass() const;

    // The multiplier this table was built from.
    double symbol(double xi) const { return symbol_(xi); }

private:
    friend KernelTable synthesize_kernel(std::function<double(double)> symbol,
                                         double singular_coefficient,
                                         const Grid& grid);
    KernelTable(Grid grid, ArrayXd regular, ArrayXd remainder, double a,
                std::function<double(double)> symbol);

    Grid grid_;
    ArrayXd regular_;   // samples at x_j
    ArrayXd remainder_; // r(xi_k) = s(xi_k) - a w |xi_k|^{-1/2}, FFT order
    double a_;
    double tail_rate_ = 0.0;
    std::function<double(double)> symbol_;
};

// Invert a symbol s(xi) = a w(xi)|xi|^{-1/2} + r(xi) with cutoff
// w(xi) = 1 - exp(-(xi/4)^2): r goes through the discrete transform,
// the split part through the precomputed closed form.
// pre: grid resolution pi N / (2 L) >= 100.
KernelTable synthesize_kernel(const Multiplier& symbol, const Grid& grid);
KernelTable synthesize_kernel(std::function<double(double)> symbol,
                              double singular_coefficient, const Grid& grid);

// Verdict of the positivity / strict-decrease scan on (0, L/2].
struct ShapeReport {
    bool positive = true;
    bool decreasing = true;
    double first_violation_x = 0.0; // location of the first failure
    bool pass() const { return positive && decreasing; }
};

// Check kernel > 0 and decreasing across consecutive samples on
// (0, L/2], up to a 1e-8-relative floor absorbing the ringing of the
// truncated symbol tail.
ShapeReport kernel_positivity_monotonicity(const KernelTable& table);

// Verdict of the finite-difference complete-monotonicity battery.
struct CompleteMonotonicityReport {
    bool pass = true;
    int first_failed_order = -1;
    double first_failed_point = 0.0;
    bool reduced_order = false; // stencil underflow near 0
};

// Check sign(-1)^n Delta^n h >= -tol_n for central differences of h on
// a geometric stencil of width 0.1 x, orders n <= n_max, at each
// point; tol_n = 1e-8 * (stencil width)^{-n} * max |h|.
CompleteMonotonicityReport
check_complete_monotone(const std::function<double(double)>& h, int n_max,
                        const std::vector<double>& points);

// Same battery applied to h(x) = m(sqrt x)/(c - m(sqrt x)), whose
// complete monotonicity drives the kernel shape results.
// pre: n_max <= 6; points in (0, 50].
CompleteMonotonicityReport check_complete_monotone(WaveSpeed c, int n_max,
                                                   const std::vector<double>& points);

// Least-squares slope of log(value) against x over [x_lo, x_hi],
// negated.  pre: >= 10 samples with value > 0 inside the window.
double fit_decay_rate(const std::vector<double>& xs,
                      const std::vector<double>& values, double x_lo,
                      double x_hi);

} // namespace whitham
