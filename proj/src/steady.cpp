#include "whitham/steady.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace whitham {

namespace {

ArrayXd symbol_samples(const Grid& grid) {
    const auto& xi = grid.frequencies();
    ArrayXd m(grid.size());
    for (int k = 0; k < grid.size(); ++k)
        m[k] = whitham_symbol(xi[k]);
    return m;
}

// sup |-c phi + phi^2 + K*phi| at the collocation points.
double physical_residual(const SpectralField& f, double c, const ArrayXd& m) {
    const ArrayXd& phi = f.values();
    ArrayXcd conv = f.coefficients();
    for (int k = 0; k < f.grid().size(); ++k)
        conv[k] *= m[k];
    const ArrayXd kphi = ifft_real(conv);
    return (-c * phi + phi * phi + kphi).abs().maxCoeff();
}

// Replace the far tail, where the fixed-point update bottoms out at
// the roundoff floor of the transform (~1e-16 sup phi, leaving tiny
// sign-indefinite values), by the exponential continuation of the
// last reliably resolved stretch.  The continuation is strictly
// positive and monotone and sits far below every residual scale.
void refine_tail(ArrayXd& phi) {
    const int n = static_cast<int>(phi.size());
    int jmax = 0;
    for (int j = 1; j < n; ++j)
        if (phi[j] > phi[jmax])
            jmax = j;
    const double sup = phi[jmax];
    const double floor = 1e-13 * sup;
    const auto step_ratio = [](double hi, double lo, int steps) {
        if (!(hi > 0.0) || !(lo > 0.0) || steps < 1)
            return 0.5;
        const double r = std::pow(lo / hi, 1.0 / steps);
        return std::clamp(r, 1e-6, 1.0 - 1e-6);
    };

    int jr = jmax;
    while (jr + 1 < n && phi[jr + 1] >= floor && phi[jr + 1] <= phi[jr])
        ++jr;
    const int sr = std::min(200, jr - jmax);
    const double rr = step_ratio(phi[jr - sr], phi[jr], sr);
    for (int j = jr + 1; j < n; ++j)
        phi[j] = phi[j - 1] * rr;

    int jl = jmax;
    while (jl - 1 >= 0 && phi[jl - 1] >= floor && phi[jl - 1] <= phi[jl])
        --jl;
    const int sl = std::min(200, jmax - jl);
    const double rl = step_ratio(phi[jl + sl], phi[jl], sl);
    for (int j = jl - 1; j >= 0; --j)
        phi[j] = phi[j + 1] * rl;
}

} // namespace

FlowTriple GalileanShift::apply(const FlowTriple& t) const {
    ArrayXd shifted = t.phi.values() + gamma;
    return {SpectralField(t.phi.grid(), std::move(shifted)), t.c + 2.0 * gamma,
            t.B + gamma * (1.0 - t.c - gamma)};
}

NormalizedTriple normalize_galilean(const SpectralField& phi, double c,
                                    double B) {
    // gamma^2 + (c - 1) gamma - B = 0, smaller-|gamma| root via the
    // cancellation-free quadratic formula
    const double b = c - 1.0;
    const double disc = b * b + 4.0 * B;
    if (disc < 0.0)
        throw std::domain_error("normalize_galilean: no real shift exists");
    double gamma;
    if (B == 0.0) {
        gamma = 0.0;
    } else {
        const double sign = b >= 0.0 ? 1.0 : -1.0;
        const double q = -0.5 * (b + sign * std::sqrt(disc));
        gamma = -B / q; // |q| is the larger root in magnitude
    }
    GalileanShift shift{gamma};
    return {shift.apply({phi, c, B}), shift};
}

SolitaryWave petviashvili_solve(WaveSpeed c, const Grid& grid, double tol) {
    // long-wave soliton guess with the matching amplitude/width scaling
    const double amp = 1.5 * (c.value() - 1.0);
    const double width = std::sqrt(amp);
    ArrayXd init(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double s = 1.0 / std::cosh(width * grid.point(j));
        init[j] = amp * s * s;
    }
    return petviashvili_solve(c, grid, SpectralField(grid, std::move(init)),
                              tol);
}

SolitaryWave petviashvili_solve(WaveSpeed c, const Grid& grid,
                                const SpectralField& init, double tol) {
    if (c.value() > 3.0)
        throw std::invalid_argument("petviashvili_solve: c must lie in (1, 3]");
    if (!(tol >= 1e-13))
        throw std::invalid_argument("petviashvili_solve: tol >= 1e-13");
    if (!(init.grid() == grid))
        throw std::invalid_argument("petviashvili_solve: grid mismatch");
    if (init.values().abs().maxCoeff() == 0.0)
        throw std::invalid_argument(
            "petviashvili_solve: zero initial guess is a trivial fixed point");

    const double cv = c.value();
    const ArrayXd m = symbol_samples(grid);
    const int n = grid.size();

    SpectralField f = init;
    double res = physical_residual(f, cv, m);
    double stabilizer = 0.0;
    int iter = 0;
    while (res > tol && iter < 500) {
        const ArrayXcd sq = dealiased_square(f);
        const ArrayXcd& hat = f.coefficients();
        double num = 0.0, den = 0.0;
        for (int k = 0; k < n; ++k) {
            num += (cv - m[k]) * std::norm(hat[k]);
            den += (std::conj(hat[k]) * sq[k]).real();
        }
        stabilizer = num / den;
        ArrayXcd next(n);
        for (int k = 0; k < n; ++k)
            next[k] = stabilizer * stabilizer * sq[k] / (cv - m[k]);
        f = SpectralField::from_coefficients(grid, std::move(next));
        res = physical_residual(f, cv, m);
        ++iter;
    }
    if (res > tol)
        throw std::runtime_error(
            "petviashvili_solve: no convergence after 500 iterations, "
            "residual = " +
            std::to_string(res));

    // center the crest at x = 0 (leftmost discrete argmax)
    int jmax = 0;
    for (int j = 1; j < n; ++j)
        if (f.values()[j] > f.values()[jmax])
            jmax = j;
    if (grid.point(jmax) != 0.0)
        f = translate(f, -grid.point(jmax));

    const KernelTable table =
        synthesize_kernel(Multiplier::resolvent(c), grid);
    ArrayXd phi = f.values();
    refine_tail(phi);
    f = SpectralField(grid, std::move(phi));

    SolitaryWave wave{f, cv, 0.0, 0.0, iter, true, stabilizer};
    const auto pair = residual(wave, table);
    wave.residual_physical = pair.first;
    wave.residual_convolution = pair.second;
    return wave;
}

std::pair<double, double> residual(const SolitaryWave& wave,
                                   const KernelTable& table) {
    const SpectralField& f = wave.phi;
    if (f.consistency_error() > 1e-12)
        throw std::invalid_argument("residual: inconsistent wave field");
    if (!(f.grid() == table.grid()))
        throw std::invalid_argument("residual: grid mismatch");
    const Grid& grid = f.grid();
    const int n = grid.size();
    const double h = grid.spacing();
    const double c = wave.c;

    const double sup_physical =
        physical_residual(f, c, symbol_samples(grid));

    // convolution form: H_c*phi^2 split into the tabulated regular
    // part (circular convolution) and the singular part applied as a
    // spectral multiplier a w(xi) |xi|^{-1/2}
    const ArrayXd& phi = f.values();
    const ArrayXcd sq_hat = fft(ArrayXd(phi * phi));
    ArrayXd reg0(n);
    for (int i = 0; i < n; ++i)
        reg0[i] = table.regular_part()[(i + n / 2) % n];
    const ArrayXcd reg_hat = fft(reg0);
    const auto& xi = grid.frequencies();
    const double a = table.singular_coefficient();
    ArrayXcd conv_hat(n);
    for (int k = 0; k < n; ++k) {
        const double sing =
            k == 0 ? 0.0
                   : a * (-std::expm1(-(xi[k] / 4.0) * (xi[k] / 4.0))) /
                         std::sqrt(std::abs(xi[k]));
        conv_hat[k] = (h * reg_hat[k] + sing) * sq_hat[k];
    }
    const ArrayXd conv = ifft_real(conv_hat);
    const double sup_convolution =
        (phi * (c - phi) - conv).abs().maxCoeff();
    return {sup_physical, sup_convolution};
}

std::vector<SolitaryWave> continuation_sweep(
    const std::vector<double>& c_values, const Grid& grid, double tol) {
    for (size_t i = 1; i < c_values.size(); ++i)
        if (!(c_values[i] > c_values[i - 1]))
            throw std::invalid_argument(
                "continuation_sweep: speeds must be sorted ascending");
    std::vector<SolitaryWave> waves;
    waves.reserve(c_values.size());
    for (double cv : c_values) {
        const WaveSpeed c(cv);
        if (waves.empty())
            waves.push_back(petviashvili_solve(c, grid, tol));
        else
            waves.push_back(
                petviashvili_solve(c, grid, waves.back().phi, tol));
    }
    return waves;
}

} // namespace whitham
