// Solitary-wave computation for the steady equation
// -c phi + phi^2 + K * phi = 0 via stabilized spectral fixed-point
// iteration, plus the Galilean normalization of the background.
#pragma once

#include "whitham/grid.hpp"
#include "whitham/kernels.hpp"
#include "whitham/symbols.hpp"

#include <utility>
#include <vector>

namespace whitham {

// A computed profile with its solver diagnostics.
struct SolitaryWave {
    SpectralField phi;
    double c;
    double residual_physical;    // sup |-c phi + phi^2 + K*phi|
    double residual_convolution; // sup |phi(c - phi) - H_c*phi^2|
    int iterations;
    bool converged;
    double stabilizer; // last stabilizing factor; -> 1 on convergence
};

// The triple (phi, c, B) acted on by elevation shifts.
struct FlowTriple {
    SpectralField phi;
    double c;
    double B;
};

// Elevation shift gamma: phi -> phi + gamma, c -> c + 2 gamma,
// B -> B + gamma (1 - c - gamma).  apply(gamma) then apply(-gamma)
// restores the original triple exactly.
struct GalileanShift {
    double gamma;
    FlowTriple apply(const FlowTriple& t) const;
    GalileanShift inverse() const { return {-gamma}; }
};

struct NormalizedTriple {
    FlowTriple triple; // with B = 0
    GalileanShift shift;
};

// Shift the triple so that B becomes 0, choosing the root of smaller
// |gamma| of gamma^2 + (c - 1) gamma - B = 0.
// errors: negative discriminant -> no real shift exists.
NormalizedTriple normalize_galilean(const SpectralField& phi, double c,
                                    double B);

// Solve the spectral fixed point (c - m) phi_hat = F(phi^2) by the
// stabilized iteration phi_hat <- S^2 F(phi^2)/(c - m).  Stops when
// the physical residual drops below tol; throws on the 500-iteration
// cap.  The default initial guess is the long-wave soliton
// (3/2)(c-1) sech^2(sqrt((3/2)(c-1)) x).
// pre: c in (1, 3]; tol >= 1e-13.
SolitaryWave petviashvili_solve(WaveSpeed c, const Grid& grid, double tol);
SolitaryWave petviashvili_solve(WaveSpeed c, const Grid& grid,
                                const SpectralField& init, double tol);

// Independent residual pair: the physical form through the spectral
// multiplier, and the convolution form phi (c - phi) = H_c * phi^2
// through the kernel table.  pre: phi physical/spectral agreement
// <= 1e-12; table built for the resolvent symbol at the wave's speed.
std::pair<double, double> residual(const SolitaryWave& wave,
                                   const KernelTable& table);

// Solve for each speed in ascending order, warm-starting from the
// previous profile.  pre: c_values sorted ascending within (1, 3].
std::vector<SolitaryWave> continuation_sweep(
    const std::vector<double>& c_values, const Grid& grid, double tol);

} // namespace whitham
