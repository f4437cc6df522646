#include "whitham/symbols.hpp"

#include <cmath>
#include <limits>

namespace whitham {

namespace {

// Even Taylor coefficients of sqrt(tanh(xi)/xi) in powers of xi^2,
// through xi^16.  Truncation error at the switch point |xi| = 1/4 is
// below 1e-15, so the two branches agree to double precision there.
constexpr double kSeries[] = {
    1.0,
    -1.0 / 6.0,
    19.0 / 360.0,
    -55.0 / 3024.0,
    11813.0 / 1814400.0,
    -2117.0 / 887040.0,
    64604977.0 / 72648576000.0,
    -263101079.0 / 784604620800.0,
    1768132943.0 / 13857951744000.0,
};

constexpr double kSeriesSwitch = 0.25;

} // namespace

double whitham_symbol(double xi) {
    if (!std::isfinite(xi))
        throw std::domain_error("whitham_symbol: non-finite frequency");
    const double a = std::abs(xi); // canonicalize: m is even
    if (a < kSeriesSwitch) {
        const double z = a * a;
        double acc = 0.0;
        for (int i = static_cast<int>(std::size(kSeries)) - 1; i >= 0; --i)
            acc = acc * z + kSeries[i];
        return acc;
    }
    return std::sqrt(std::tanh(a) / a);
}

double resolvent_symbol(double xi, WaveSpeed c) {
    const double m = whitham_symbol(xi);
    return m / (c.value() - m);
}

double strip_halfwidth(WaveSpeed c) {
    const double c2 = c.value() * c.value();
    double lo = 1e-15;
    double hi = M_PI / 2 - 1e-12;
    // tan(d)/d increases strictly from 1 to +inf on (0, pi/2), so the
    // root is unique and the bracket always straddles it for c > 1.
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (std::tan(mid) / mid > c2)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace whitham
