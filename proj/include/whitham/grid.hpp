// Periodic grid standing in for the real line, and real-valued fields
// carried simultaneously in physical and spectral form.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace whitham {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;

// Uniform periodic grid on [-L, L) with N points (N a power of two).
// x_j = -L + 2 L j / N, dual frequencies xi_k = pi k / L in FFT order
// (k = 0..N/2-1, -N/2..-1).
class Grid {
public:
    Grid(double half_length, int points);

    double half_length() const { return L_; }
    int size() const { return N_; }
    double spacing() const { return 2.0 * L_ / N_; }
    double max_frequency() const { return M_PI * (N_ / 2) / L_; }

    const ArrayXd& points() const { return x_; }
    const ArrayXd& frequencies() const { return xi_; }

    double point(int j) const { return x_[j]; }
    // Index of the grid point nearest to x (periodic).
    int nearest_index(double x) const;

    bool operator==(const Grid& o) const {
        return L_ == o.L_ && N_ == o.N_;
    }

private:
    double L_;
    int N_;
    ArrayXd x_;
    ArrayXd xi_;
};

// A real function on a Grid with physical samples and DFT coefficients
// kept consistent.  coeff = fft(values) (unnormalized forward DFT).
class SpectralField {
public:
    SpectralField(Grid grid, ArrayXd values);
    static SpectralField from_coefficients(Grid grid, ArrayXcd coeff);
    static SpectralField zero(Grid grid);

    const Grid& grid() const { return grid_; }
    const ArrayXd& values() const { return values_; }
    const ArrayXcd& coefficients() const { return coeff_; }

    // Max |values - ifft(coeff)|; the two views must agree.
    double consistency_error() const;

    // Continuous-line transform F(f)(xi_k) = h * (-1)^k * coeff_k.
    ArrayXcd line_transform() const;

private:
    SpectralField(Grid grid, ArrayXd values, ArrayXcd coeff)
        : grid_(std::move(grid)), values_(std::move(values)),
          coeff_(std::move(coeff)) {}
    Grid grid_;
    ArrayXd values_;
    ArrayXcd coeff_;
};

// FFT helpers (thread-safe; per-thread plan cache).
ArrayXcd fft(const ArrayXd& v);
ArrayXcd fft_c(const ArrayXcd& v);
ArrayXd ifft_real(const ArrayXcd& c);
ArrayXcd ifft_c(const ArrayXcd& c);

// f(x - shift), computed spectrally.
SpectralField translate(const SpectralField& f, double shift);

// f(2 lambda - x), computed spectrally.
SpectralField reflect(const SpectralField& f, double lambda);

// f^2 with the quadratic product dealiased by zero padding (factor 2);
// returns DFT coefficients of the product on the original grid.
ArrayXcd dealiased_square(const SpectralField& f);

// Trapezoid integral h * sum(values) over one period.
double integrate(const SpectralField& f);

} // namespace whitham
