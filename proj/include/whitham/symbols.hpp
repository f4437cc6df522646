// Fourier multipliers of the Whitham equation and the analyticity
// strip half-width that governs kernel and wave decay rates.
#pragma once

#include <stdexcept>

namespace whitham {

// Supercritical wave speed, c > 1.
class WaveSpeed {
public:
    explicit WaveSpeed(double c) : c_(c) {
        if (!(c > 1.0))
            throw std::invalid_argument("supercritical speed required: c > 1");
    }
    double value() const { return c_; }

private:
    double c_;
};

// m(xi) = sqrt(tanh(xi)/xi), even, with m(0) = 1 and m ~ |xi|^{-1/2}.
// Near zero the even Taylor series is used; the closed form otherwise.
double whitham_symbol(double xi);

// m(xi) / (c - m(xi)), the symbol of the resolvent kernel H_c.
double resolvent_symbol(double xi, WaveSpeed c);

// Half-width delta_c of the largest strip |Im z| <= delta on which
// sup |m| < c, i.e. the unique root of tan(delta)/delta = c^2 in
// (0, pi/2).  Bisection to absolute tolerance 1e-12.
double strip_halfwidth(WaveSpeed c);

// A multiplier by value: either m itself or m/(c - m).
class Multiplier {
public:
    enum class Kind { whitham, resolvent };

    static Multiplier whitham() { return Multiplier(Kind::whitham, 2.0); }
    static Multiplier resolvent(WaveSpeed c) {
        return Multiplier(Kind::resolvent, c.value());
    }

    double operator()(double xi) const {
        return kind_ == Kind::whitham ? whitham_symbol(xi)
                                      : resolvent_symbol(xi, WaveSpeed(c_));
    }
    Kind kind() const { return kind_; }
    double speed() const { return c_; }

    // Coefficient of the |xi|^{-1/2} far field of the symbol.
    double farfield_coefficient() const {
        return kind_ == Kind::whitham ? 1.0 : 1.0 / c_;
    }

private:
    Multiplier(Kind k, double c) : kind_(k), c_(c) {}
    Kind kind_;
    double c_;
};

} // namespace whitham
