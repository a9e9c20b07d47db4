#pragma once

namespace oscillnet {

// Classical fourth-order Runge-Kutta step with fixed step size.
//
// State must support vector-space arithmetic (Eigen vectors do). The
// derivative callable is invoked as f(y, t). A fixed step keeps
// trajectories bit-reproducible across runs, which the regression and
// determinism tests rely on.
template <class State, class Deriv>
State rk4_step(const State& y, double t, double dt, Deriv&& f) {
    const double h2 = dt / 2.0;
    const State k1 = f(y, t);
    const State k2 = f(State(y + h2 * k1), t + h2);
    const State k3 = f(State(y + h2 * k2), t + h2);
    const State k4 = f(State(y + dt * k3), t + dt);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Number of whole steps covering [0, T] at step dt.
inline long rk4_step_count(double dt, double T) {
    return static_cast<long>(T / dt + 0.5);
}

// RK4 is stable for purely imaginary eigenvalues i*w while |w|*dt stays
// below ~2.83; integrators reject steps beyond this documented limit.
inline constexpr double kRk4StabilityLimit = 2.8;

}  // namespace oscillnet
