#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oscillnet/spectral.hpp"

namespace oscillnet::oscillator {

// Sign branch of the first-order equation: Plus means +i dx/dt = H x,
// whose solution evolves as exp(-iHt); Minus evolves as exp(+iHt).
// Plus is the default branch throughout.
enum class Sign { Plus, Minus };

struct NodeState {
    Eigen::VectorXd x;  // user states
    Eigen::VectorXd v;  // time derivatives
    double t = 0.0;
};

struct WaveTrajectory {
    std::vector<NodeState> samples;
    double dt = 0.0;
    int stride = 1;
};

struct FundamentalTrajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    Sign sign = Sign::Plus;
    double dt = 0.0;
    int stride = 1;
};

// Integrates d^2x/dt^2 = -L x as a first-order system in (x, v) with
// classical RK4. Samples every `stride` steps, including t = 0. Rejects
// the step size when dt * sqrt(bound on max |eigenvalue|) exceeds the
// RK4 stability limit (NumericalError).
WaveTrajectory integrate_wave_direct(const Eigen::MatrixXd& L,
                                     const Eigen::VectorXd& x0,
                                     const Eigen::VectorXd& v0, double dt,
                                     double T, int stride = 1);

// Per-mode evolution phi_k(t) = exp(-+ i sqrt(lambda_k) t) phi_k(0);
// Plus selects exp(-i...). Requires a real, diagonalizable, nonnegative
// spectrum (within its tolerance).
Eigen::VectorXcd solve_mode_exact(const spectral::Spectrum& spectrum,
                                  const Eigen::VectorXcd& phi0, double t,
                                  Sign sign = Sign::Plus);

// Closed-form wave solution through the eigenbasis:
// x(t) = P [cos(w t) phi0 + sin(w t)/w phiv0], w = sqrt(lambda), with the
// zero-cluster modes evolving as phi0 + t phiv0. Independent oracle for
// integrate_wave_direct on diagonalizable graphs.
Eigen::VectorXd solve_wave_exact(const spectral::Spectrum& spectrum,
                                 const Eigen::VectorXd& x0,
                                 const Eigen::VectorXd& v0, double t);

// Integrates +-i dx/dt = H x, i.e. dx/dt = -+ i H x, with RK4. Same
// step-size rejection rule as integrate_wave_direct, using a Gerschgorin
// bound on |eigenvalues of H|.
FundamentalTrajectory solve_fundamental(const Eigen::MatrixXcd& H,
                                        const Eigen::VectorXcd& x0, double dt,
                                        double T, Sign sign = Sign::Plus,
                                        int stride = 1);

// E = (v.v + x.Lx) / 2; conserved by the wave equation for symmetric L.
double oscillation_energy(const Eigen::MatrixXd& L, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v);

}  // namespace oscillnet::oscillator
