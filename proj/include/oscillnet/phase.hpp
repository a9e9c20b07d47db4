#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "oscillnet/jordan.hpp"

namespace oscillnet::phase {

// Phase deviations of the 2m mode amplitudes, packed as 4 reals per
// 0-based mode index k:
//   [4k]   Re delta_k(up)     [4k+1] Im delta_k(up)
//   [4k+2] Re delta_k(down)   [4k+3] Im delta_k(down)
// The up branch rides the e^{-i w t} carrier, the down branch the
// e^{+i w t} carrier; delta measures the deviation from that carrier.
using PhaseState = Eigen::VectorXd;

// Number of modes encoded in a packed state; throws if the size is not
// a positive multiple of 4.
int mode_count(const PhaseState& y);

// Flat offsets into the packed state. mode is 1-based to match the
// series labels d1u, d1d, ... used in CSV headers.
int re_index(int mode, bool down);
int im_index(int mode, bool down);

// One of the 2m phase series, identified by 1-based mode and branch.
struct SeriesRef {
    int mode = 1;
    bool down = false;
};

// Label such as "d1u" or "d3d"; used in CSV columns and reports.
std::string series_label(const SeriesRef& s);

// A difference of real parts, Re[first] - Re[second].
struct PhasePair {
    SeriesRef first;
    SeriesRef second;
};

std::string pair_label(const PhasePair& p);

// The six cross-branch differences that appear inside the coupling
// terms of the first two modes' equations of motion (requires m >= 3):
// (1d,1u), (2d,1u), (2u,1d), (2d,2u), (3d,2u), (3u,3d).
std::vector<PhasePair> coupling_pairs(int m);

// Integration halts (normal return, flagged) once any |Im delta|
// exceeds im_limit, just before exp(|Im delta|) would overflow.
struct GuardSettings {
    double im_limit = 700.0;
};

struct PhaseTrajectory {
    jordan::JordanBlockModel model;
    jordan::Variant variant = jordan::Variant::Unitary;
    double dt = 0.0;
    int stride = 1;
    std::vector<double> times;
    std::vector<PhaseState> states;
    // Populated only by the linear-system oracle: |psi| per component
    // (2m entries, up/down interleaved) at each sample, kept separate
    // from exp(-Im delta) so the two can be cross-checked.
    std::vector<Eigen::VectorXd> raw_amplitudes;
    bool guard_tripped = false;
    double guard_time = 0.0;
    std::string guard_reason;

    int m() const { return model.m; }
};

// Right-hand sides of the phase equations of motion. The state fixes m;
// the unitary variant is autonomous (the carrier frequency cancels),
// the direct variant carries explicit 2*omega*t terms. At omega = 0 the
// two are the same function evaluated identically.
PhaseState rhs_unitary(const PhaseState& y, double omega, double d);
PhaseState rhs_direct(const PhaseState& y, double omega, double d, double t);

// Fixed-step RK4 integration of the phase equations. Samples every
// `stride` steps, always including t = 0 and the final step. Throws
// NumericalError on NaN/Inf with the offending time and component;
// trips the overflow guard as a flagged normal return.
PhaseTrajectory integrate_phases(const jordan::JordanBlockModel& model,
                                 jordan::Variant variant,
                                 const PhaseState& initial,
                                 double dt,
                                 double T,
                                 int stride = 100,
                                 const GuardSettings& guard = {});

// Initial mode amplitudes psi0 = e^{i delta0}, componentwise, in the
// interleaved layout psi[2k] = mode k up, psi[2k+1] = mode k down.
Eigen::VectorXcd initial_psi(const PhaseState& initial);

// Independent oracle: integrates the linear system i dpsi/dt = M(t) psi
// with RK4 and recovers the phases afterwards,
//   delta_k(up)   = -i log(psi_k(up)   e^{+i w t})
//   delta_k(down) = -i log(psi_k(down) e^{-i w t}),
// unwrapping Re delta continuously across steps. Throws NumericalError
// if any |psi_k| falls below 1e-12 (phase undefined) or an unwrap step
// jumps by pi/2 or more (dt too coarse to track the branch).
PhaseTrajectory integrate_psi_oracle(const jordan::JordanBlockModel& model,
                                     jordan::Variant variant,
                                     const Eigen::VectorXcd& psi0,
                                     double dt,
                                     double T,
                                     int stride = 100);

// Mode amplitudes |psi_k| = exp(-Im delta_k), 2m entries interleaved
// up/down; the exponent is clamped to +-700 so saturated values are
// reported instead of overflowing.
Eigen::VectorXd amplitudes(const PhaseState& y);
std::vector<Eigen::VectorXd> amplitudes(const PhaseTrajectory& traj);

// Extracts one Re series, one Im series, or a difference of Re series
// on the trajectory's sample grid.
std::vector<double> real_series(const PhaseTrajectory& traj, const SeriesRef& s);
std::vector<double> imag_series(const PhaseTrajectory& traj, const SeriesRef& s);
std::vector<double> difference_series(const PhaseTrajectory& traj, const PhasePair& p);

// Closed time window used by the tail statistics and divergence fits.
struct FitWindow {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

// Default fit window: the last half of the sampled range measured in
// ln t (positive sample times only).
FitWindow default_tail_window(const PhaseTrajectory& traj);

enum class DivergenceClass { Bounded, Logarithmic, FasterThanLogarithmic };

const char* divergence_class_name(DivergenceClass c);

struct DivergenceThresholds {
    // Slope of |Im delta| against ln t below which a series counts as
    // bounded.
    double slope_min = 0.01;
    // Linear-fit goodness required to call a growing series logarithmic.
    double r2_min = 0.99;
    // Relative size of the convex quadratic bulge (against the linear
    // rise across the window) beyond which growth is classified as
    // faster than logarithmic.
    double curvature_rel = 0.1;
};

struct SeriesClassification {
    SeriesRef series;
    DivergenceClass cls = DivergenceClass::Bounded;
    double slope = 0.0;      // d|Im delta| / d ln t over the window
    double intercept = 0.0;  // fitted value at ln t = 0
    double r2 = 0.0;
    double curvature = 0.0;  // quadratic coefficient in ln t
    // Extrapolated time where the fitted line crosses zero; NaN for
    // bounded series.
    double onset_time = 0.0;
};

struct DivergenceReport {
    FitWindow window;
    DivergenceThresholds thresholds;
    std::vector<SeriesClassification> series;  // 2m entries, up/down per mode
};

// Least-squares fit of |Im delta| against ln t over the window for
// every series. Requires the trajectory to cover at least 1.5 decades
// of positive time and at least 8 samples with t > 0 inside the window
// (throws std::invalid_argument otherwise).
DivergenceReport classify_divergence(const PhaseTrajectory& traj,
                                     const FitWindow& window,
                                     const DivergenceThresholds& thresholds = {});
DivergenceReport classify_divergence(const PhaseTrajectory& traj,
                                     const DivergenceThresholds& thresholds = {});

// Single-series classification on explicit (t, y) data; fits |y|
// against ln t. The trajectory overloads delegate here and tests drive
// it directly.
SeriesClassification classify_series(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     const FitWindow& window,
                                     const DivergenceThresholds& thresholds);

struct PhaseDifferenceStats {
    double min = 0.0;  // over the window
    double max = 0.0;
    bool converged = false;  // oscillation span below threshold
    double limit = 0.0;      // window mean; the limit value when converged
};

// Tail statistics of Re[first] - Re[second]. Default window is
// [0.2 * t_end, t_end]; a difference counts as converged when its span
// over the window is below conv_threshold.
PhaseDifferenceStats phase_difference_stats(const PhaseTrajectory& traj,
                                            const PhasePair& pair,
                                            std::optional<FitWindow> window = {},
                                            double conv_threshold = 0.05);

// A turning point of a sampled series: a sign change of the finite-
// difference derivative. kind = +1 at a local maximum, -1 at a local
// minimum. Event times are refined by the parabola through the three
// samples around the turn.
struct TurningPoint {
    double t = 0.0;
    int kind = 0;
};

std::vector<TurningPoint> turning_points(const std::vector<double>& times,
                                         const std::vector<double>& values);

}  // namespace oscillnet::phase
