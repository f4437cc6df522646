#include "whitham/analysis.hpp"

#include "whitham/quadrature.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whitham {

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i)
        b = b * (n - i) / (i + 1);
    return b;
}

// Integer s with s * h = v, or -1 if v is off the lattice.
long lattice_index(double v, double h) {
    const double q = v / h;
    const long s = std::lround(q);
    if (std::abs(q - s) > 1e-6)
        return -1;
    return s;
}

// Cell-averaged kernel at lattice offset k (x = k h), zero beyond the
// grid half-length.
double cell_kernel(const KernelTable& table, long k) {
    const int n = table.grid().size();
    if (k <= -n / 2 || k >= n / 2)
        return 0.0;
    return table.cell_average(static_cast<int>(k + n / 2));
}

} // namespace

bool SymmetryReport::pass() const {
    return reflection_error <= tolerance && crest_count == 1 &&
           monotone_tail && !degenerate &&
           std::abs(moving_plane_sup - crest_location) <= grid_spacing;
}

SymmetryReport verify_symmetry(const SpectralField& phi, double tol) {
    const Grid& grid = phi.grid();
    const int n = grid.size();
    const ArrayXd& v = phi.values();
    const double sup = v.maxCoeff();
    if (!(sup > v.minCoeff()))
        throw std::invalid_argument("verify_symmetry: flat profile");
    if (!(sup > 0.0))
        throw std::invalid_argument("verify_symmetry: nonpositive profile");

    int jmax = 0;
    for (int j = 1; j < n; ++j)
        if (v[j] > v[jmax])
            jmax = j;
    // sub-grid crest by the vertex of the interpolating parabola
    const double h = grid.spacing();
    double l0 = grid.point(jmax);
    if (jmax > 0 && jmax < n - 1) {
        const double denom = v[jmax - 1] - 2.0 * v[jmax] + v[jmax + 1];
        if (denom < 0.0)
            l0 += 0.5 * h * (v[jmax - 1] - v[jmax + 1]) / denom;
    }

    const SpectralField mirrored = reflect(phi, l0);
    const double reflection_error =
        (mirrored.values() - v).abs().maxCoeff() / sup;

    int crest_count = 0;
    for (int j = 1; j < n - 1; ++j)
        if (v[j] > v[j - 1] && v[j] > v[j + 1] && v[j] > 1e-6 * sup)
            ++crest_count;

    bool monotone_tail = true;
    for (int j = jmax; j < std::min(n - 1, jmax + n / 4); ++j)
        if (v[j + 1] > v[j]) {
            monotone_tail = false;
            break;
        }

    const MovingPlaneResult mp = moving_plane_scan(phi);
    return {l0,   reflection_error, crest_count, monotone_tail,
            mp.lambda_star, mp.degenerate, tol, h};
}

MovingPlaneResult moving_plane_scan(const SpectralField& phi) {
    const Grid& grid = phi.grid();
    const int n = grid.size();
    const ArrayXd& v = phi.values();
    const double sup = v.maxCoeff();
    const double eps = 1e-10 * sup;
    const double boundary = std::max(std::abs(v[0]), std::abs(v[n - 1]));
    int jmax = 0;
    for (int j = 1; j < n; ++j)
        if (v[j] > v[jmax])
            jmax = j;
    if (std::abs(v[n - 1]) > 1e-8 * sup ||
        (std::abs(v[0]) > 1e-8 * sup && jmax != 0))
        throw std::runtime_error(
            "moving_plane_scan: profile not decayed at the grid boundary");
    (void)boundary;

    // only mirror points inside the support window can break the scan:
    // elsewhere phi(2l - x) <= eps and the positive tail dominates
    int w0 = 0, w1 = n - 1;
    while (w0 < n && v[w0] <= eps)
        ++w0;
    while (w1 >= 0 && v[w1] <= eps)
        --w1;
    if (w0 > w1)
        return {grid.point(0), true};

    int last_ok = 0; // candidate index of the last admissible axis
    bool any_nonvacuous = false;
    for (int lam = 0; lam < n; ++lam) {
        bool ok = true;
        bool nonvacuous = false;
        // x = grid.point(j) < lambda with mirror 2 lambda - x inside
        // the window: mirror index 2 lam - j must land in [w0, w1]
        const int jlo = std::max(0, 2 * lam - w1);
        const int jhi = std::min(lam - 1, 2 * lam - w0);
        for (int j = jlo; j <= jhi; ++j) {
            nonvacuous = true;
            if (v[2 * lam - j] < v[j] - eps) {
                ok = false;
                break;
            }
        }
        if (!ok)
            break;
        last_ok = lam;
        if (nonvacuous)
            any_nonvacuous = true;
    }
    return {grid.point(last_ok), !any_nonvacuous};
}

double half_line_convolution_min(const SpectralField& f, double lambda,
                                 const KernelTable& table) {
    const Grid& grid = f.grid();
    const int n = grid.size();
    const double h = grid.spacing();
    const double L = grid.half_length();
    const long s = lattice_index(2.0 * (lambda + L), h);
    if (s < 0)
        throw std::invalid_argument(
            "half_line_convolution_min: 2 lambda must lie on the lattice");
    const ArrayXd& v = f.values();
    const double scale = v.abs().maxCoeff();
    if (scale == 0.0)
        return 0.0;

    // support of f strictly right of lambda
    std::vector<int> ys;
    int y_hi = 0;
    for (int j = 0; j < n; ++j) {
        if (grid.point(j) <= lambda)
            continue;
        if (std::abs(v[j]) > 1e-14 * scale) {
            ys.push_back(j);
            y_hi = j;
        }
    }
    if (ys.empty())
        return 0.0;

    const int i_lo = grid.nearest_index(lambda);
    const int i_hi = std::min(n - 1, y_hi + static_cast<int>(20.0 / h));
    double min_val = std::numeric_limits<double>::infinity();
    for (int i = i_lo; i <= i_hi; ++i) {
        if (grid.point(i) < lambda)
            continue;
        double acc = 0.0;
        for (int j : ys)
            acc += (cell_kernel(table, i - j) -
                    cell_kernel(table, i + j - s)) *
                   v[j];
        min_val = std::min(min_val, h * acc);
    }
    return min_val;
}

TouchingReport touching_check(const SpectralField& phi1,
                              const SpectralField& phi2, double lambda,
                              const KernelTable& table, double speed) {
    const Grid& grid = phi1.grid();
    if (!(grid == phi2.grid()) || !(grid == table.grid()))
        throw std::invalid_argument("touching_check: grid mismatch");
    const int n = grid.size();
    const double h = grid.spacing();
    const double L = grid.half_length();
    const long s = lattice_index(2.0 * (lambda + L), h);
    if (s < 0)
        throw std::invalid_argument(
            "touching_check: 2 lambda must lie on the lattice");
    const ArrayXd& a = phi1.values();
    const ArrayXd& b = phi2.values();
    const double scale =
        std::max(a.abs().maxCoeff(), b.abs().maxCoeff());
    const double eps = 1e-10 * std::max(scale, 1e-300);

    ArrayXd diff2(n);
    for (int j = 0; j < n; ++j)
        diff2[j] = a[j] * a[j] - b[j] * b[j];

    double sup_half = 0.0;
    for (int j = 0; j < n; ++j) {
        const double x = grid.point(j);
        if (x < lambda)
            continue;
        if (a[j] < b[j] - eps)
            throw std::invalid_argument(
                "touching_check: ordering hypothesis phi1 >= phi2 fails on "
                "the half-line");
        const long mirror = s - j;
        if (mirror >= 0 && mirror < n &&
            std::abs(diff2[j] + diff2[mirror]) > eps * scale * 4.0)
            throw std::invalid_argument(
                "touching_check: phi1^2 - phi2^2 is not odd about lambda");
        sup_half = std::max(sup_half, std::abs(diff2[j]));
    }

    TouchingReport report{};
    if (sup_half <= 4.0 * eps * scale) {
        report.verdict = TouchingReport::Verdict::identically_equal;
        report.min_integral = 0.0;
        report.sum_below_speed = true;
        return report;
    }
    report.verdict = TouchingReport::Verdict::strictly_ordered;
    report.min_integral =
        half_line_convolution_min(SpectralField(grid, diff2), lambda, table);
    report.sum_below_speed = true;
    for (int j = 0; j < n; ++j)
        if (grid.point(j) >= lambda && !(a[j] + b[j] < speed))
            report.sum_below_speed = false;
    return report;
}

double weighted_norm(const SpectralField& phi, double l, double q) {
    const Grid& grid = phi.grid();
    const ArrayXd& v = phi.values();
    const int n = grid.size();
    if (std::isinf(q)) {
        double m = 0.0;
        for (int j = 0; j < n; ++j)
            m = std::max(m,
                         std::pow(std::abs(grid.point(j)), l) * std::abs(v[j]));
        return m;
    }
    if (!(q >= 1.0))
        throw std::invalid_argument("weighted_norm: q must lie in [1, inf]");
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += std::pow(std::pow(std::abs(grid.point(j)), l) * std::abs(v[j]),
                        q);
    return std::pow(grid.spacing() * acc, 1.0 / q);
}

bool factorial_inequality_holds(int n, int q) {
    if (n < 0 || n > 20 || q < 1 || q > 5)
        throw std::invalid_argument(
            "factorial_inequality_holds: need 0 <= n <= 20, 1 <= q <= 5");
    using boost::multiprecision::cpp_int;
    cpp_int lhs = 1;
    for (int i = 2; i <= q * n; ++i)
        lhs *= i;
    cpp_int fact = 1;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    cpp_int base = fact;
    for (int i = 0; i < n; ++i)
        base *= q;
    cpp_int rhs = 1;
    for (int i = 0; i < q; ++i)
        rhs *= base;
    return lhs <= rhs;
}

double convolution_moment_identity(const SpectralField& f,
                                   const SpectralField& g, int n) {
    if (n < 0 || n > 6)
        throw std::invalid_argument("convolution_moment_identity: n <= 6");
    const Grid& grid = f.grid();
    if (!(grid == g.grid()))
        throw std::invalid_argument("convolution_moment_identity: grid mismatch");
    const int N = grid.size();
    const ArrayXd& fv = f.values();
    const ArrayXd& gv = g.values();
    const double fscale = fv.abs().maxCoeff();
    const double gscale = gv.abs().maxCoeff();
    const double edge =
        std::max({std::abs(fv[0]), std::abs(fv[N - 1]), std::abs(gv[0]),
                  std::abs(gv[N - 1])});
    if (edge > 1e-10 * std::max(fscale, gscale))
        throw std::runtime_error(
            "convolution_moment_identity: fields not decayed at the boundary");

    const double h = grid.spacing();
    const auto conv = [&](const ArrayXd& u, const ArrayXd& w) {
        return ArrayXd(h * ifft_real(ArrayXcd(fft(u) * fft(w))));
    };
    // circular convolution indexes x_i - x_j through the shifted
    // origin: roll so that index 0 corresponds to distance 0
    const auto roll = [&](const ArrayXd& u) {
        ArrayXd out(N);
        for (int j = 0; j < N; ++j)
            out[j] = u[(j + N / 2) % N];
        return out;
    };
    const ArrayXd f0 = roll(fv);

    ArrayXd lhs = conv(f0, gv);
    for (int j = 0; j < N; ++j)
        lhs[j] *= std::pow(grid.point(j), n);

    ArrayXd rhs = ArrayXd::Zero(N);
    for (int m = 0; m <= n; ++m) {
        ArrayXd xf(N), xg(N);
        for (int j = 0; j < N; ++j) {
            xf[j] = std::pow(grid.point(j), n - m) * fv[j];
            xg[j] = std::pow(grid.point(j), m) * gv[j];
        }
        rhs += binomial(n, m) * conv(roll(xf), xg);
    }
    return (lhs - rhs).abs().maxCoeff();
}

double weight_inequality_constant(double l, double m,
                                  const std::vector<double>& x_range,
                                  const std::vector<double>& eps_set) {
    if (!(l > 0.0) || !(l < m - 1.0))
        throw std::invalid_argument(
            "weight_inequality_constant: need 0 < l < m - 1");
    for (double x : x_range)
        if (std::abs(x) < 1.0)
            throw std::invalid_argument(
                "weight_inequality_constant: probes need |x| >= 1");

    double best = 0.0;
    for (double x : x_range) {
        for (double eps : eps_set) {
            const auto integrand = [&](double y) {
                return std::pow(std::abs(y), l) /
                       (std::pow(1.0 + eps * std::abs(y), m) *
                        std::pow(1.0 + std::abs(x - y), m));
            };
            // integrate over segments split at the kinks y = 0, y = x,
            // doubling the outer radius until the tail is exhausted
            double total = 0.0;
            double R = std::max(4.0 * std::abs(x), 8.0);
            std::vector<double> pts{-R, 0.0, std::min(0.0, x),
                                    std::max(0.0, x), R};
            std::sort(pts.begin(), pts.end());
            for (size_t i = 0; i + 1 < pts.size(); ++i)
                total += adaptive_simpson(integrand, pts[i], pts[i + 1], 1e-11);
            for (int iter = 0; iter < 40; ++iter) {
                const double add =
                    adaptive_simpson(integrand, R, 2.0 * R, 1e-12) +
                    adaptive_simpson(integrand, -2.0 * R, -R, 1e-12);
                total += add;
                R *= 2.0;
                if (add < 1e-10 * total)
                    break;
            }
            const double ratio = total * std::pow(1.0 + eps * std::abs(x), m) /
                                 std::pow(std::abs(x), l);
            best = std::max(best, ratio);
        }
    }
    return best;
}

bool DecayReport::pass() const {
    if (!(fitted_rate >= 0.9 * reference_rate))
        return false;
    for (const auto& [key, value] : weighted_norms)
        if (!std::isfinite(value))
            return false;
    return true;
}

DecayReport verify_decay(const SolitaryWave& wave, double x_lo, double x_hi,
                         const std::vector<std::pair<double, double>>& lq) {
    const Grid& grid = wave.phi.grid();
    std::vector<double> xs, vs;
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.point(j);
        if (x >= x_lo && x <= x_hi) {
            xs.push_back(x);
            vs.push_back(wave.phi.values()[j]);
        }
    }
    DecayReport report;
    report.fitted_rate = fit_decay_rate(xs, vs, x_lo, x_hi);
    report.reference_rate = strip_halfwidth(WaveSpeed(wave.c));
    report.window_lo = x_lo;
    report.window_hi = x_hi;
    for (const auto& [l, q] : lq)
        report.weighted_norms[{l, q}] = weighted_norm(wave.phi, l, q);
    return report;
}

} // namespace whitham
