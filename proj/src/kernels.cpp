#include "whitham/kernels.hpp"

#include "whitham/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whitham {

namespace {

// Smooth cutoff isolating the |xi|^{-1/2} far field of the symbol.
double cutoff(double xi) {
    const double s = xi / 4.0;
    return -std::expm1(-s * s);
}

// Envelope of the split part without the coefficient a.
double split_envelope(double xi) {
    return cutoff(xi) / std::sqrt(std::abs(xi));
}

// G(x) = integral over (0, inf) of exp(-(xi/4)^2) xi^{-1/2} cos(x xi).
// The integrand is negligible beyond xi = 60.  The [0, eps] piece is
// regularized by xi = t^2; the rest goes through Filon quadrature on
// log-spaced pieces so the xi^{-1/2} envelope is well resolved.
double singular_transform_direct(double x) {
    const double eps = 1e-3;
    const double near =
        2.0 * gauss(
                  [x](double t) {
                      const double t2 = t * t;
                      return std::exp(-t2 * t2 / 16.0) * std::cos(x * t2);
                  },
                  0.0, std::sqrt(eps), 32);
    const auto f = [](double xi) {
        return std::exp(-(xi / 4.0) * (xi / 4.0)) / std::sqrt(xi);
    };
    double far = 0.0;
    const double edges[] = {eps, 1e-2, 1e-1, 1.0, 60.0};
    for (int i = 0; i + 1 < 5; ++i)
        far += filon_cos(f, edges[i], edges[i + 1], x, 1e-12, 16);
    return near + far;
}

// G tabulated once on a log-spaced reference grid with cubic
// interpolation in log x; direct quadrature outside the table.
struct SingularTransformTable {
    static constexpr double x_lo = 1e-6;
    static constexpr double x_hi = 1024.0;
    static constexpr int n = 2048;
    double lo, step;
    std::vector<double> g;

    SingularTransformTable() : lo(std::log(x_lo)), g(n) {
        step = (std::log(x_hi) - lo) / (n - 1);
        for (int i = 0; i < n; ++i)
            g[i] = singular_transform_direct(std::exp(lo + step * i));
    }

    double operator()(double x) const {
        if (x < x_lo)
            x = x_lo; // G is constant to 1e-12 below the table floor
        if (x > x_hi * (1.0 - 2.0 / n))
            return singular_transform_direct(x);
        const double u = (std::log(x) - lo) / step;
        int i = static_cast<int>(u);
        i = std::clamp(i, 1, n - 3);
        const double t = u - i;
        // 4-point Lagrange through nodes i-1 .. i+2
        const double c0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
        const double c1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        const double c2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
        const double c3 = (t + 1.0) * t * (t - 1.0) / 6.0;
        return c0 * g[i - 1] + c1 * g[i] + c2 * g[i + 1] + c3 * g[i + 2];
    }
};

double singular_transform(double x) {
    static const SingularTransformTable table;
    return table(x);
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i)
        b = b * (n - i) / (i + 1);
    return b;
}

} // namespace

KernelTable::KernelTable(Grid grid, ArrayXd regular, ArrayXd remainder,
                         double a, std::function<double(double)> symbol)
    : grid_(std::move(grid)), regular_(std::move(regular)),
      remainder_(std::move(remainder)), a_(a), symbol_(std::move(symbol)) {
    std::vector<double> xs, vs;
    for (int j = 0; j < grid_.size(); ++j) {
        const double x = grid_.point(j);
        if (x >= 2.0 && x <= 8.0) {
            xs.push_back(x);
            vs.push_back(value_at(j));
        }
    }
    try {
        tail_rate_ = fit_decay_rate(xs, vs, 2.0, 8.0);
    } catch (const std::exception&) {
        tail_rate_ = 0.0; // sign-changing or under-sampled tail
    }
}

double KernelTable::singular_value(double x) const {
    const double r = std::abs(x);
    return a_ / std::sqrt(2.0 * M_PI * r) -
           a_ / M_PI * singular_transform(r);
}

double KernelTable::value(double x) const {
    const int n = grid_.size();
    const double L = grid_.half_length();
    const auto& xi = grid_.frequencies();
    // direct spectral sum of the remainder (even symbol)
    double acc = remainder_[0] + remainder_[n / 2] * std::cos(x * xi[n / 2]);
    for (int k = 1; k < n / 2; ++k)
        acc += 2.0 * remainder_[k] * std::cos(x * xi[k]);
    double reg = acc / (2.0 * L);
    // correction for the symbol tail beyond the frequency cutoff
    const double xm = grid_.max_frequency();
    const auto tail = [this](double q) {
        return symbol_(q) - a_ * split_envelope(q);
    };
    const double ax = std::abs(x);
    double corr = filon_cos(tail, xm, 4.0 * xm, ax, 1e-12, 16) +
                  filon_cos(tail, 4.0 * xm, 16.0 * xm, ax, 1e-12, 16) +
                  filon_cos(tail, 16.0 * xm, 64.0 * xm, ax, 1e-12, 16);
    reg += corr / M_PI;
    return reg + singular_value(x);
}

double KernelTable::value_at(int j) const {
    return regular_[j] + singular_value(grid_.point(j));
}

double KernelTable::lattice_value(long k) const {
    const int n = grid_.size();
    if (std::labs(k) >= n / 2)
        return 0.0; // below the roundoff floor of the tail
    return value_at(static_cast<int>(k + n / 2));
}

double KernelTable::cell_average(int j) const {
    const double h = grid_.spacing();
    const double x = grid_.point(j);
    const double x0 = x - 0.5 * h, x1 = x + 0.5 * h;
    // exact cell moment of |x|^{-1/2}
    double moment;
    if (x0 >= 0.0)
        moment = 2.0 * (std::sqrt(x1) - std::sqrt(x0));
    else if (x1 <= 0.0)
        moment = 2.0 * (std::sqrt(-x0) - std::sqrt(-x1));
    else
        moment = 2.0 * (std::sqrt(x1) + std::sqrt(-x0));
    const double singular = a_ / std::sqrt(2.0 * M_PI) * moment / h;
    // midpoint for the smooth pieces
    const double smooth =
        regular_[j] - a_ / M_PI * singular_transform(std::abs(x));
    return singular + smooth;
}

double KernelTable::mass() const {
    double acc = 0.0;
    for (int j = 0; j < grid_.size(); ++j)
        acc += cell_average(j);
    return acc * grid_.spacing();
}

KernelTable synthesize_kernel(const Multiplier& symbol, const Grid& grid) {
    return synthesize_kernel([symbol](double xi) { return symbol(xi); },
                             symbol.farfield_coefficient(), grid);
}

KernelTable synthesize_kernel(std::function<double(double)> symbol,
                              double singular_coefficient, const Grid& grid) {
    if (grid.max_frequency() < 100.0)
        throw std::invalid_argument(
            "synthesize_kernel: under-resolved grid, need pi N / (2 L) >= 100");
    const int n = grid.size();
    const auto& xi = grid.frequencies();
    ArrayXd r(n);
    for (int k = 0; k < n; ++k) {
        const double s = symbol(xi[k]);
        if (!std::isfinite(s))
            throw std::domain_error("synthesize_kernel: non-finite symbol");
        r[k] = k == 0 ? s : s - singular_coefficient * split_envelope(xi[k]);
    }
    // regular(x_j) = (1/2L) sum_k r_k e^{i x_j xi_k}
    //             = (N/2L) ifft((-1)^k r_k)_j
    ArrayXcd staggered(n);
    for (int k = 0; k < n; ++k)
        staggered[k] = (k % 2 == 0 ? 1.0 : -1.0) * r[k];
    ArrayXd regular =
        ifft_real(staggered) * (n / (2.0 * grid.half_length()));
    return KernelTable(grid, std::move(regular), std::move(r),
                       singular_coefficient, std::move(symbol));
}

ShapeReport kernel_positivity_monotonicity(const KernelTable& table) {
    const Grid& g = table.grid();
    const int n = g.size();
    ShapeReport report;
    // Truncating the symbol tail at the grid's maximal frequency rings
    // at the Nyquist scale; compare against that floor rather than
    // demanding strict inequalities down to roundoff.
    double vmax = 0.0;
    for (int j = n / 2 + 1; j <= n / 2 + n / 4; ++j)
        vmax = std::max(vmax, std::abs(table.value_at(j)));
    const double tol = 1e-8 * vmax;
    double prev = 0.0;
    bool have_prev = false;
    for (int j = n / 2 + 1; j <= n / 2 + n / 4; ++j) {
        const double x = g.point(j);
        const double v = table.value_at(j);
        if (report.positive && !(v > -tol)) {
            report.positive = false;
            if (report.first_violation_x == 0.0)
                report.first_violation_x = x;
        }
        if (have_prev && report.decreasing && !(v < prev + tol)) {
            report.decreasing = false;
            if (report.first_violation_x == 0.0)
                report.first_violation_x = x;
        }
        prev = v;
        have_prev = true;
    }
    return report;
}

CompleteMonotonicityReport
check_complete_monotone(const std::function<double(double)>& h, int n_max,
                        const std::vector<double>& points) {
    CompleteMonotonicityReport report;
    double scale = 0.0;
    for (double x : points)
        scale = std::max(scale, std::abs(h(x)));
    if (scale == 0.0)
        scale = 1.0;
    for (double x : points) {
        const double d = 0.1 * x;
        int top = n_max;
        while (top > 0 && x - 0.5 * top * d <= 0.0) {
            --top; // shrink the stencil rather than probe x <= 0
            report.reduced_order = true;
        }
        for (int order = 0; order <= top; ++order) {
            double delta = 0.0;
            for (int j = 0; j <= order; ++j)
                delta += (j % 2 == 0 ? 1.0 : -1.0) * binomial(order, j) *
                         h(x + (0.5 * order - j) * d);
            const double divided = delta / std::pow(d, order);
            const double tol = 1e-8 * scale / std::pow(d, order);
            const double signed_value =
                (order % 2 == 0 ? 1.0 : -1.0) * divided;
            if (signed_value < -tol) {
                report.pass = false;
                if (report.first_failed_order < 0) {
                    report.first_failed_order = order;
                    report.first_failed_point = x;
                }
            }
        }
    }
    return report;
}

CompleteMonotonicityReport
check_complete_monotone(WaveSpeed c, int n_max,
                        const std::vector<double>& points) {
    if (n_max > 6)
        throw std::invalid_argument("check_complete_monotone: n_max <= 6");
    for (double x : points)
        if (!(x > 0.0) || x > 50.0)
            throw std::invalid_argument(
                "check_complete_monotone: points must lie in (0, 50]");
    return check_complete_monotone(
        [c](double x) { return resolvent_symbol(std::sqrt(x), c); }, n_max,
        points);
}

double fit_decay_rate(const std::vector<double>& xs,
                      const std::vector<double>& values, double x_lo,
                      double x_hi) {
    if (xs.size() != values.size())
        throw std::invalid_argument("fit_decay_rate: size mismatch");
    std::vector<double> x, logv;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < x_lo || xs[i] > x_hi)
            continue;
        if (!(values[i] > 0.0))
            throw std::domain_error(
                "fit_decay_rate: nonpositive value in window");
        x.push_back(xs[i]);
        logv.push_back(std::log(values[i]));
    }
    if (x.size() < 10)
        throw std::invalid_argument("fit_decay_rate: fewer than 10 samples");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += logv[i];
        sxx += x[i] * x[i];
        sxy += x[i] * logv[i];
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace whitham
