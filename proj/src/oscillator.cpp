#include "oscillnet/oscillator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "oscillnet/errors.hpp"
#include "oscillnet/rk4.hpp"

namespace oscillnet::oscillator {

namespace {

using Complex = std::complex<double>;

// Largest |eigenvalue| is bounded by the max absolute row sum.
double max_abs_row_sum(const Eigen::MatrixXcd& M) {
    double bound = 0.0;
    for (int i = 0; i < M.rows(); ++i) {
        double row = 0.0;
        for (int j = 0; j < M.cols(); ++j) row += std::abs(M(i, j));
        bound = std::max(bound, row);
    }
    return bound;
}

void check_step(double dt, double T, double freq_bound, const char* who) {
    if (!(dt > 0.0) || !(T > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": dt and T must be positive");
    }
    if (dt * freq_bound > kRk4StabilityLimit) {
        throw NumericalError(std::string(who) +
                             ": step size rejected, dt * max-frequency bound " +
                             "exceeds the RK4 stability limit");
    }
}

}  // namespace

WaveTrajectory integrate_wave_direct(const Eigen::MatrixXd& L,
                                     const Eigen::VectorXd& x0,
                                     const Eigen::VectorXd& v0, double dt,
                                     double T, int stride) {
    const int n = static_cast<int>(L.rows());
    if (L.cols() != n || x0.size() != n || v0.size() != n) {
        throw std::invalid_argument("integrate_wave_direct: dimension mismatch");
    }
    if (stride < 1) {
        throw std::invalid_argument("integrate_wave_direct: stride must be >= 1");
    }
    // Wave-system frequencies are sqrt(lambda); bound |lambda| by rows.
    check_step(dt, T, std::sqrt(max_abs_row_sum(L.cast<Complex>())),
               "integrate_wave_direct");

    auto rhs = [&L, n](const Eigen::VectorXd& y, double) {
        Eigen::VectorXd dy(2 * n);
        dy.head(n) = y.tail(n);
        dy.tail(n) = -(L * y.head(n));
        return dy;
    };

    Eigen::VectorXd y(2 * n);
    y.head(n) = x0;
    y.tail(n) = v0;

    WaveTrajectory traj;
    traj.dt = dt;
    traj.stride = stride;
    const long steps = rk4_step_count(dt, T);
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (k % stride == 0 || k == steps) {
            traj.samples.push_back({y.head(n), y.tail(n), t});
        }
        if (k < steps) y = rk4_step(y, t, dt, rhs);
    }
    return traj;
}

Eigen::VectorXcd solve_mode_exact(const spectral::Spectrum& spectrum,
                                  const Eigen::VectorXcd& phi0, double t,
                                  Sign sign) {
    if (!spectrum.is_real) {
        throw std::invalid_argument("solve_mode_exact: spectrum is not real");
    }
    if (!spectrum.is_diagonalizable) {
        throw std::invalid_argument("solve_mode_exact: matrix is not diagonalizable");
    }
    if (phi0.size() != spectrum.eigenvalues.size()) {
        throw std::invalid_argument("solve_mode_exact: dimension mismatch");
    }
    const double branch = (sign == Sign::Plus) ? -1.0 : 1.0;
    Eigen::VectorXcd phi(phi0.size());
    for (int k = 0; k < phi0.size(); ++k) {
        const double lambda = spectrum.eigenvalues[k].real();
        if (lambda < -spectrum.tol) {
            throw std::invalid_argument("solve_mode_exact: negative eigenvalue");
        }
        const double w = std::sqrt(std::max(lambda, 0.0));
        phi[k] = std::polar(1.0, branch * w * t) * phi0[k];
    }
    return phi;
}

Eigen::VectorXd solve_wave_exact(const spectral::Spectrum& spectrum,
                                 const Eigen::VectorXd& x0,
                                 const Eigen::VectorXd& v0, double t) {
    if (!spectrum.is_real) {
        throw std::invalid_argument("solve_wave_exact: spectrum is not real");
    }
    if (!spectrum.is_diagonalizable) {
        throw std::invalid_argument("solve_wave_exact: matrix is not diagonalizable");
    }
    const int n = static_cast<int>(spectrum.eigenvalues.size());
    if (x0.size() != n || v0.size() != n) {
        throw std::invalid_argument("solve_wave_exact: dimension mismatch");
    }
    const Eigen::MatrixXcd& P = spectrum.eigenvectors;
    const auto lu = P.fullPivLu();
    const Eigen::VectorXcd phi0 = lu.solve(x0.cast<Complex>());
    const Eigen::VectorXcd phiv0 = lu.solve(v0.cast<Complex>());
    Eigen::VectorXcd phi(n);
    for (int k = 0; k < n; ++k) {
        const double lambda = spectrum.eigenvalues[k].real();
        if (lambda < -spectrum.tol) {
            throw std::invalid_argument("solve_wave_exact: negative eigenvalue");
        }
        if (std::abs(lambda) < spectrum.tol) {
            phi[k] = phi0[k] + t * phiv0[k];  // zero mode drifts linearly
        } else {
            const double w = std::sqrt(lambda);
            phi[k] = std::cos(w * t) * phi0[k] + std::sin(w * t) / w * phiv0[k];
        }
    }
    return (P * phi).real();
}

FundamentalTrajectory solve_fundamental(const Eigen::MatrixXcd& H,
                                        const Eigen::VectorXcd& x0, double dt,
                                        double T, Sign sign, int stride) {
    if (H.rows() != H.cols() || x0.size() != H.rows()) {
        throw std::invalid_argument("solve_fundamental: dimension mismatch");
    }
    if (stride < 1) {
        throw std::invalid_argument("solve_fundamental: stride must be >= 1");
    }
    check_step(dt, T, max_abs_row_sum(H), "solve_fundamental");

    // +i dx/dt = Hx  =>  dx/dt = -iHx (Plus); Minus flips the factor.
    const Complex factor =
        (sign == Sign::Plus) ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
    auto rhs = [&H, factor](const Eigen::VectorXcd& y, double) {
        return Eigen::VectorXcd(factor * (H * y));
    };

    FundamentalTrajectory traj;
    traj.sign = sign;
    traj.dt = dt;
    traj.stride = stride;
    Eigen::VectorXcd y = x0;
    const long steps = rk4_step_count(dt, T);
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (k % stride == 0 || k == steps) {
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
        if (k < steps) y = rk4_step(y, t, dt, rhs);
    }
    return traj;
}

double oscillation_energy(const Eigen::MatrixXd& L, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v) {
    return 0.5 * (v.dot(v) + x.dot(L * x));
}

}  // namespace oscillnet::oscillator
