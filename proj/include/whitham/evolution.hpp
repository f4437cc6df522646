// Pseudospectral time integration of u_t + 2 u u_x + K*u_x = 0 with
// conservation monitors, rigid-translation verification, and tracking
// of the instantaneous axis of symmetry.
#pragma once

#include "whitham/grid.hpp"
#include "whitham/steady.hpp"

#include <utility>
#include <vector>

namespace whitham {

struct Snapshot {
    double t;
    SpectralField u;
};

struct InvariantSample {
    double t;
    double mass;     // integral of u
    double momentum; // integral of u^2
};

struct EvolutionState {
    double t;
    SpectralField u;
    std::vector<InvariantSample> invariants_log;
};

struct AxisTrack {
    std::vector<double> t;
    std::vector<double> lambda;         // axis of symmetry per snapshot
    std::vector<double> symmetry_error; // minimized reflection error
    double speed_fit;                   // least-squares slope of lambda(t)
};

struct EvolutionReport {
    double traveling_error; // sup |u(T) - phi(. - cT)| / sup phi
    AxisTrack axis;
    double mass_drift;     // relative
    double momentum_drift; // relative
};

// Advective CFL bound 0.5 h / (sup |2u| + 1); the multiplier part
// contributes bounded phase speed since m <= 1.
double stability_bound(const SpectralField& u);

// One classical Runge-Kutta step of
//   u_hat_t = -i xi (F(u^2) + m(xi) u_hat)
// with 2/3-rule dealiasing of the square.  pre: dt within the
// stability bound.  errors: non-finite result -> blow-up error.
SpectralField step(const SpectralField& u, double dt);

// Advance to time T (the step is shrunk uniformly so it divides T),
// logging invariants and storing evenly spaced snapshots.
std::pair<EvolutionState, std::vector<Snapshot>>
evolve(const SpectralField& u0, double T, double dt, int snapshots = 50);

// Evolve a converged wave to time T and compare against the exact
// profile spectrally shifted by cT.  pre: cT <= L/4.
EvolutionReport verify_traveling(const SolitaryWave& wave, double T,
                                 double dt);

// Per snapshot, locate the reflection axis minimizing the reflection
// error over sub-grid shifts (golden-section search within +-2h of
// the discrete argmax); fit the axis speed by least squares.
// errors: a snapshot with several near-maximal crests -> ambiguity.
AxisTrack symmetry_axis_track(const std::vector<Snapshot>& snapshots);

} // namespace whitham
