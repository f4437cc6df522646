#include "whitham/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>

namespace whitham {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

} // namespace

Grid::Grid(double half_length, int points) : L_(half_length), N_(points) {
    if (!(L_ > 0.0))
        throw std::invalid_argument("Grid: half-length must be positive");
    if (N_ < 16 || !is_power_of_two(N_))
        throw std::invalid_argument("Grid: N must be a power of two, N >= 16");
    x_.resize(N_);
    xi_.resize(N_);
    const double h = spacing();
    for (int j = 0; j < N_; ++j)
        x_[j] = -L_ + h * j;
    for (int k = 0; k < N_; ++k) {
        const int kk = k < N_ / 2 ? k : k - N_;
        xi_[k] = M_PI * kk / L_;
    }
}

int Grid::nearest_index(double x) const {
    const double h = spacing();
    long j = std::lround((x + L_) / h);
    j %= N_;
    if (j < 0)
        j += N_;
    return static_cast<int>(j);
}

ArrayXcd fft(const ArrayXd& v) {
    Eigen::VectorXcd out;
    Eigen::VectorXd in = v.matrix();
    fft_engine().fwd(out, in);
    return out.array();
}

ArrayXcd fft_c(const ArrayXcd& v) {
    Eigen::VectorXcd out, in = v.matrix();
    fft_engine().fwd(out, in);
    return out.array();
}

ArrayXd ifft_real(const ArrayXcd& c) {
    Eigen::VectorXcd out, in = c.matrix();
    fft_engine().inv(out, in);
    return out.array().real();
}

ArrayXcd ifft_c(const ArrayXcd& c) {
    Eigen::VectorXcd out, in = c.matrix();
    fft_engine().inv(out, in);
    return out.array();
}

SpectralField::SpectralField(Grid grid, ArrayXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("SpectralField: size mismatch");
    coeff_ = fft(values_);
}

SpectralField SpectralField::from_coefficients(Grid grid, ArrayXcd coeff) {
    if (coeff.size() != grid.size())
        throw std::invalid_argument("SpectralField: size mismatch");
    ArrayXd values = ifft_real(coeff);
    return SpectralField(std::move(grid), std::move(values), std::move(coeff));
}

SpectralField SpectralField::zero(Grid grid) {
    ArrayXd v = ArrayXd::Zero(grid.size());
    return SpectralField(std::move(grid), std::move(v));
}

double SpectralField::consistency_error() const {
    return (ifft_real(coeff_) - values_).abs().maxCoeff();
}

ArrayXcd SpectralField::line_transform() const {
    const int n = grid_.size();
    const double h = grid_.spacing();
    ArrayXcd out(n);
    for (int k = 0; k < n; ++k)
        out[k] = (k % 2 == 0 ? h : -h) * coeff_[k];
    return out;
}

SpectralField translate(const SpectralField& f, double shift) {
    const auto& xi = f.grid().frequencies();
    ArrayXcd c = f.coefficients();
    const int n = f.grid().size();
    for (int k = 0; k < n; ++k)
        c[k] *= std::exp(std::complex<double>(0.0, -xi[k] * shift));
    // keep the Nyquist mode real so the result stays real
    c[n / 2] = std::complex<double>(
        f.coefficients()[n / 2].real() * std::cos(xi[n / 2] * shift), 0.0);
    return SpectralField::from_coefficients(f.grid(), std::move(c));
}

SpectralField reflect(const SpectralField& f, double lambda) {
    const auto& xi = f.grid().frequencies();
    const ArrayXcd& c = f.coefficients();
    const int n = f.grid().size();
    ArrayXcd r(n);
    for (int k = 0; k < n; ++k)
        r[k] = std::conj(c[k]) *
               std::exp(std::complex<double>(0.0, -2.0 * xi[k] * lambda));
    r[n / 2] = std::complex<double>(r[n / 2].real(), 0.0);
    return SpectralField::from_coefficients(f.grid(), std::move(r));
}

ArrayXcd dealiased_square(const SpectralField& f) {
    const int n = f.grid().size();
    const int m = 2 * n;
    const ArrayXcd& c = f.coefficients();
    ArrayXcd padded = ArrayXcd::Zero(m);
    for (int k = 0; k < n / 2; ++k)
        padded[k] = c[k];
    for (int k = n / 2; k < n; ++k)
        padded[m - n + k] = c[k];
    ArrayXd up = ifft_c(padded).real() * 2.0; // ifft normalizes by m = 2n
    ArrayXcd sq = fft(ArrayXd(up * up));
    ArrayXcd out(n);
    for (int k = 0; k < n / 2; ++k)
        out[k] = sq[k] * 0.5;
    for (int k = n / 2; k < n; ++k)
        out[k] = sq[m - n + k] * 0.5;
    return out;
}

double integrate(const SpectralField& f) {
    return f.grid().spacing() * f.values().sum();
}

} // namespace whitham
