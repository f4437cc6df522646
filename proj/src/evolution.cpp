#include "whitham/evolution.hpp"

#include "whitham/symbols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace whitham {

namespace {

struct Workspace {
    ArrayXd m;       // whitham symbol at xi_k
    ArrayXd mask;    // 2/3-rule dealiasing mask
    const Grid* grid;

    explicit Workspace(const Grid& g) : m(g.size()), mask(g.size()), grid(&g) {
        const auto& xi = g.frequencies();
        const double cut = 2.0 / 3.0 * g.max_frequency();
        for (int k = 0; k < g.size(); ++k) {
            m[k] = whitham_symbol(xi[k]);
            mask[k] = std::abs(xi[k]) <= cut ? 1.0 : 0.0;
        }
    }

    // -i xi (F(u^2) + m u_hat), evaluated in coefficient space
    ArrayXcd rhs(const ArrayXcd& hat) const {
        const ArrayXd u = ifft_real(hat);
        ArrayXcd sq = fft(ArrayXd(u * u));
        const auto& xi = grid->frequencies();
        ArrayXcd out(grid->size());
        for (int k = 0; k < grid->size(); ++k) {
            const std::complex<double> flux =
                mask[k] * sq[k] + m[k] * hat[k];
            out[k] = std::complex<double>(0.0, -xi[k]) * flux;
        }
        // keep the Nyquist mode real: i xi_{N/2} maps it out of the
        // real subspace, and its flux is annihilated by the mask
        out[grid->size() / 2] = 0.0;
        return out;
    }
};

ArrayXcd rk4_step(const Workspace& ws, const ArrayXcd& hat, double dt) {
    const ArrayXcd k1 = ws.rhs(hat);
    const ArrayXcd k2 = ws.rhs(ArrayXcd(hat + 0.5 * dt * k1));
    const ArrayXcd k3 = ws.rhs(ArrayXcd(hat + 0.5 * dt * k2));
    const ArrayXcd k4 = ws.rhs(ArrayXcd(hat + dt * k3));
    return hat + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

double stability_bound(const SpectralField& u) {
    const double sup = u.values().abs().maxCoeff();
    return 0.5 * u.grid().spacing() / (2.0 * sup + 1.0);
}

SpectralField step(const SpectralField& u, double dt) {
    if (!(dt <= stability_bound(u)))
        throw std::invalid_argument("step: dt exceeds the stability bound");
    const Workspace ws(u.grid());
    ArrayXcd hat = rk4_step(ws, u.coefficients(), dt);
    if (!hat.isFinite().all())
        throw std::runtime_error("step: blow-up (non-finite field)");
    return SpectralField::from_coefficients(u.grid(), std::move(hat));
}

std::pair<EvolutionState, std::vector<Snapshot>>
evolve(const SpectralField& u0, double T, double dt, int snapshots) {
    if (T < 0.0 || !(dt > 0.0))
        throw std::invalid_argument("evolve: need T >= 0 and dt > 0");
    const Workspace ws(u0.grid());
    EvolutionState state{0.0, u0, {}};
    std::vector<Snapshot> snaps;
    if (T == 0.0) {
        state.invariants_log.push_back(
            {0.0, integrate(u0),
             u0.grid().spacing() * (u0.values() * u0.values()).sum()});
        snaps.push_back({0.0, u0});
        return {std::move(state), std::move(snaps)};
    }
    const long steps = std::max(1L, std::lround(std::ceil(T / dt)));
    const double h = T / steps;
    const long per_snap = std::max(1L, steps / std::max(1, snapshots));

    ArrayXcd hat = u0.coefficients();
    const auto record = [&](double t, const ArrayXcd& c) {
        SpectralField f = SpectralField::from_coefficients(u0.grid(), c);
        state.invariants_log.push_back(
            {t, integrate(f),
             f.grid().spacing() * (f.values() * f.values()).sum()});
        snaps.push_back({t, std::move(f)});
    };
    record(0.0, hat);
    for (long s = 1; s <= steps; ++s) {
        hat = rk4_step(ws, hat, h);
        if (!hat.isFinite().all())
            throw std::runtime_error("evolve: blow-up at t = " +
                                     std::to_string(s * h));
        if (s % per_snap == 0 || s == steps)
            record(s * h, hat);
    }
    state.t = T;
    state.u = snaps.back().u;
    return {std::move(state), std::move(snaps)};
}

EvolutionReport verify_traveling(const SolitaryWave& wave, double T,
                                 double dt) {
    if (!wave.converged)
        throw std::invalid_argument("verify_traveling: wave not converged");
    const Grid& grid = wave.phi.grid();
    if (!(wave.c * T <= grid.half_length() / 4.0))
        throw std::invalid_argument(
            "verify_traveling: cT exceeds L/4 (wrap-around window)");
    auto [state, snaps] = evolve(wave.phi, T, dt);
    const SpectralField shifted = translate(wave.phi, wave.c * T);
    const double sup = wave.phi.values().maxCoeff();
    EvolutionReport report{};
    report.traveling_error =
        (state.u.values() - shifted.values()).abs().maxCoeff() / sup;
    report.axis = symmetry_axis_track(snaps);

    const auto& log = state.invariants_log;
    double mass_lo = log.front().mass, mass_hi = mass_lo;
    double mom_lo = log.front().momentum, mom_hi = mom_lo;
    for (const auto& s : log) {
        mass_lo = std::min(mass_lo, s.mass);
        mass_hi = std::max(mass_hi, s.mass);
        mom_lo = std::min(mom_lo, s.momentum);
        mom_hi = std::max(mom_hi, s.momentum);
    }
    report.mass_drift = (mass_hi - mass_lo) / std::abs(log.front().mass);
    report.momentum_drift =
        (mom_hi - mom_lo) / std::abs(log.front().momentum);
    return report;
}

AxisTrack symmetry_axis_track(const std::vector<Snapshot>& snapshots) {
    AxisTrack track{};
    double prev_lambda = 0.0;
    bool first = true;
    for (const auto& snap : snapshots) {
        const SpectralField& u = snap.u;
        const Grid& grid = u.grid();
        const int n = grid.size();
        const ArrayXd& v = u.values();
        const double sup = v.maxCoeff();

        int jmax = 0, near_max = 0;
        for (int j = 0; j < n; ++j)
            if (v[j] > v[jmax])
                jmax = j;
        for (int j = 1; j < n - 1; ++j)
            if (v[j] > v[j - 1] && v[j] > v[j + 1] && v[j] > 0.99 * sup)
                ++near_max;
        if (near_max > 1)
            throw std::runtime_error(
                "symmetry_axis_track: several near-maximal crests at t = " +
                std::to_string(snap.t));

        const double h = grid.spacing();
        const auto err = [&](double lambda) {
            return (reflect(u, lambda).values() - v).abs().maxCoeff() / sup;
        };
        // golden-section search on [argmax - 2h, argmax + 2h]
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = grid.point(jmax) - 2.0 * h, b = grid.point(jmax) + 2.0 * h;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = err(c), fd = err(d);
        for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = err(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = err(d);
            }
        }
        double lambda = 0.5 * (a + b);
        // unwrap across the periodic seam
        if (!first) {
            const double period = 2.0 * grid.half_length();
            while (lambda - prev_lambda > 0.5 * period)
                lambda -= period;
            while (lambda - prev_lambda < -0.5 * period)
                lambda += period;
        }
        prev_lambda = lambda;
        first = false;
        track.t.push_back(snap.t);
        track.lambda.push_back(lambda);
        track.symmetry_error.push_back(std::min(err(lambda), std::min(fc, fd)));
    }
    // least-squares slope of lambda(t)
    const size_t m = track.t.size();
    if (m >= 2) {
        double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
        for (size_t i = 0; i < m; ++i) {
            st += track.t[i];
            sl += track.lambda[i];
            stt += track.t[i] * track.t[i];
            stl += track.t[i] * track.lambda[i];
        }
        track.speed_fit = (m * stl - st * sl) / (m * stt - st * st);
    } else {
        track.speed_fit = 0.0;
    }
    return track;
}

} // namespace whitham
