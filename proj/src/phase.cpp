#include "oscillnet/phase.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "oscillnet/errors.hpp"
#include "oscillnet/rk4.hpp"

namespace oscillnet::phase {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
// Below this modulus the recovered phase is numerically meaningless.
constexpr double kPsiFloor = 1e-12;
// An unwrap step this large is ambiguous between branches.
constexpr double kUnwrapLimit = kPi / 2.0;

std::string format_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", t);
    return buf;
}

// Label for a flat component of the packed state, e.g. "Im[d2u]".
std::string component_label(int j) {
    const int mode = j / 4 + 1;
    const bool down = (j % 4) >= 2;
    const bool imag = (j % 2) == 1;
    std::string s = imag ? "Im[" : "Re[";
    s += "d" + std::to_string(mode) + (down ? "d" : "u") + "]";
    return s;
}

// Shared equations of motion. The two variants differ only by the
// carrier angle u inside the trig arguments: u = 0 for the autonomous
// form, u = 2*omega*t for the explicitly time-dependent form. Mode k
// couples to itself across branches and to mode k+1; the last mode has
// no superdiagonal neighbor, so its neighbor terms are dropped.
PhaseState rhs_kernel(const PhaseState& y, double d, double u) {
    const int m = mode_count(y);
    PhaseState dy(4 * m);
    for (int k = 0; k < m; ++k) {
        const double ru = y[4 * k];
        const double iu = y[4 * k + 1];
        const double rd = y[4 * k + 2];
        const double id = y[4 * k + 3];
        const double a = rd - ru;
        const double c = ru - rd;
        const double e1 = std::exp(iu - id);
        const double f1 = std::exp(id - iu);
        double d_ru = -d * e1 * std::cos(a + u);
        double d_iu = -d * e1 * std::sin(a + u);
        double d_rd = -d * f1 * std::cos(c - u);
        double d_id = -d * f1 * std::sin(c - u);
        if (k + 1 < m) {
            const double ru_n = y[4 * (k + 1)];
            const double iu_n = y[4 * (k + 1) + 1];
            const double rd_n = y[4 * (k + 1) + 2];
            const double id_n = y[4 * (k + 1) + 3];
            const double b = rd_n - ru;
            const double g = ru_n - rd;
            const double e2 = std::exp(iu - id_n);
            const double f2 = std::exp(id - iu_n);
            d_ru -= e2 * std::sin(b + u);
            d_iu += e2 * std::cos(b + u);
            d_rd += f2 * std::sin(g - u);
            d_id -= f2 * std::cos(g - u);
        }
        dy[4 * k] = d_ru;
        dy[4 * k + 1] = d_iu;
        dy[4 * k + 2] = d_rd;
        dy[4 * k + 3] = d_id;
    }
    return dy;
}

void check_integration_args(const jordan::JordanBlockModel& model,
                            Eigen::Index state_size,
                            Eigen::Index expected,
                            double dt,
                            double T,
                            int stride) {
    jordan::validate(model);
    if (state_size != expected) {
        throw std::invalid_argument("initial state has " + std::to_string(state_size) +
                                    " entries, expected " + std::to_string(expected));
    }
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (stride < 1) throw std::invalid_argument("stride must be >= 1");
}

// Least-squares line through (z, y), centered for stability.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

LineFit fit_line(const std::vector<double>& z, const std::vector<double>& y) {
    const size_t n = z.size();
    double zm = 0.0, ym = 0.0;
    for (size_t i = 0; i < n; ++i) {
        zm += z[i];
        ym += y[i];
    }
    zm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double szz = 0.0, szy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dz = z[i] - zm;
        const double dy = y[i] - ym;
        szz += dz * dz;
        szy += dz * dy;
        syy += dy * dy;
    }
    LineFit fit;
    fit.slope = szz > 0.0 ? szy / szz : 0.0;
    fit.intercept = ym - fit.slope * zm;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * z[i]);
            ss_res += r * r;
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

// Quadratic coefficient of the least-squares parabola, fitted in
// centered coordinates (the second-order coefficient is shift-invariant).
double fit_quadratic_coeff(const std::vector<double>& z, const std::vector<double>& y) {
    const auto n = static_cast<Eigen::Index>(z.size());
    double zm = 0.0;
    for (double v : z) zm += v;
    zm /= static_cast<double>(z.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dz = z[i] - zm;
        A(i, 0) = 1.0;
        A(i, 1) = dz;
        A(i, 2) = dz * dz;
        b(i) = y[i];
    }
    const Eigen::Vector3d coeff = A.colPivHouseholderQr().solve(b);
    return coeff(2);
}

}  // namespace

int mode_count(const PhaseState& y) {
    if (y.size() <= 0 || y.size() % 4 != 0) {
        throw std::invalid_argument("phase state must pack 4 reals per mode (got " +
                                    std::to_string(y.size()) + " entries)");
    }
    return static_cast<int>(y.size() / 4);
}

int re_index(int mode, bool down) {
    if (mode < 1) throw std::invalid_argument("mode index is 1-based");
    return 4 * (mode - 1) + (down ? 2 : 0);
}

int im_index(int mode, bool down) {
    return re_index(mode, down) + 1;
}

std::string series_label(const SeriesRef& s) {
    return "d" + std::to_string(s.mode) + (s.down ? "d" : "u");
}

std::string pair_label(const PhasePair& p) {
    return series_label(p.first) + "-" + series_label(p.second);
}

std::vector<PhasePair> coupling_pairs(int m) {
    if (m < 3) {
        throw std::invalid_argument("coupling pairs need m >= 3 (got m = " +
                                    std::to_string(m) + ")");
    }
    return {
        {{1, true}, {1, false}},   // d1d - d1u
        {{2, true}, {1, false}},   // d2d - d1u
        {{2, false}, {1, true}},   // d2u - d1d
        {{2, true}, {2, false}},   // d2d - d2u
        {{3, true}, {2, false}},   // d3d - d2u
        {{3, false}, {3, true}},   // d3u - d3d
    };
}

PhaseState rhs_unitary(const PhaseState& y, double omega, double d) {
    (void)omega;  // cancels against the carrier; kept for interface symmetry
    return rhs_kernel(y, d, 0.0);
}

PhaseState rhs_direct(const PhaseState& y, double omega, double d, double t) {
    return rhs_kernel(y, d, 2.0 * omega * t);
}

PhaseTrajectory integrate_phases(const jordan::JordanBlockModel& model,
                                 jordan::Variant variant,
                                 const PhaseState& initial,
                                 double dt,
                                 double T,
                                 int stride,
                                 const GuardSettings& guard) {
    check_integration_args(model, initial.size(), 4 * model.m, dt, T, stride);
    for (Eigen::Index j = 0; j < initial.size(); ++j) {
        if (!std::isfinite(initial[j])) {
            throw std::invalid_argument("initial phase state must be finite");
        }
    }

    const double omega = model.omega;
    const double d = model.d;
    auto rhs = [variant, omega, d](const PhaseState& y, double t) {
        return variant == jordan::Variant::Direct ? rhs_direct(y, omega, d, t)
                                                  : rhs_unitary(y, omega, d);
    };

    PhaseTrajectory traj;
    traj.model = model;
    traj.variant = variant;
    traj.dt = dt;
    traj.stride = stride;

    const long steps = rk4_step_count(dt, T);
    PhaseState y = initial;
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        int overflow_at = -1;
        for (Eigen::Index j = 0; j < y.size(); ++j) {
            if (!std::isfinite(y[j])) {
                throw NumericalError("phase integration produced a non-finite value at t = " +
                                     format_time(t) + " in " +
                                     component_label(static_cast<int>(j)));
            }
            if (j % 2 == 1 && std::abs(y[j]) > guard.im_limit && overflow_at < 0) {
                overflow_at = static_cast<int>(j);
            }
        }
        if (overflow_at >= 0) {
            traj.times.push_back(t);
            traj.states.push_back(y);
            traj.guard_tripped = true;
            traj.guard_time = t;
            traj.guard_reason = component_label(overflow_at) + " exceeded the overflow guard " +
                                format_time(guard.im_limit) + " at t = " + format_time(t);
            break;
        }
        if (k % stride == 0 || k == steps) {
            traj.times.push_back(t);
            traj.states.push_back(y);
        }
        if (k < steps) {
            y = rk4_step(y, t, dt, rhs);
        }
    }
    return traj;
}

Eigen::VectorXcd initial_psi(const PhaseState& initial) {
    const int m = mode_count(initial);
    Eigen::VectorXcd psi(2 * m);
    for (int k = 0; k < m; ++k) {
        // psi = e^{i delta} with delta = re + i im, so the exponent is
        // -im + i re.
        psi[2 * k] = std::exp(Complex(-initial[4 * k + 1], initial[4 * k]));
        psi[2 * k + 1] = std::exp(Complex(-initial[4 * k + 3], initial[4 * k + 2]));
    }
    return psi;
}

PhaseTrajectory integrate_psi_oracle(const jordan::JordanBlockModel& model,
                                     jordan::Variant variant,
                                     const Eigen::VectorXcd& psi0,
                                     double dt,
                                     double T,
                                     int stride) {
    check_integration_args(model, psi0.size(), 2 * model.m, dt, T, stride);

    // At omega = 0 the two operator variants coincide exactly, so the
    // constant-matrix path serves both.
    const bool constant = variant == jordan::Variant::Direct || model.omega == 0.0;
    Eigen::MatrixXcd M, D, upper_rows, lower_rows;
    if (constant) {
        M = jordan::build_direct_operator(model).entries;
    } else {
        const jordan::HatTriple hat = jordan::pauli_extend(jordan::build_triple(model));
        D = hat.omega0;
        const Eigen::MatrixXcd coupling = hat.diag_part + hat.nilpotent_part;
        upper_rows = coupling;
        lower_rows = coupling;
        for (Eigen::Index r = 0; r < coupling.rows(); ++r) {
            if (r % 2 == 0) {
                lower_rows.row(r).setZero();
            } else {
                upper_rows.row(r).setZero();
            }
        }
    }
    const Complex minus_i(0.0, -1.0);
    const double omega = model.omega;
    auto rhs = [&](const Eigen::VectorXcd& psi, double t) -> Eigen::VectorXcd {
        if (constant) return minus_i * (M * psi);
        const Complex f = std::polar(1.0, -2.0 * omega * t);
        return minus_i * (D * psi + f * (upper_rows * psi) + std::conj(f) * (lower_rows * psi));
    };

    const int n = 2 * model.m;
    Eigen::VectorXd re(n), im(n);
    // Initial branch: principal angle of psi0 (the carrier rotation is
    // the identity at t = 0).
    bool have_prev = false;

    // Recovers delta from psi at time t, continuing the Re branch from
    // the previous step.
    auto recover = [&](const Eigen::VectorXcd& psi, double t) {
        for (int j = 0; j < n; ++j) {
            const Complex z =
                psi[j] * std::polar(1.0, (j % 2 == 0 ? omega : -omega) * t);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw NumericalError("oracle state became non-finite at t = " + format_time(t) +
                                     " in component " + std::to_string(j));
            }
            const double r = std::abs(z);
            if (r < kPsiFloor) {
                throw NumericalError("phase undefined: |psi| = " + format_time(r) +
                                     " below underflow guard at t = " + format_time(t) +
                                     " in component " + std::to_string(j));
            }
            const double principal = std::atan2(z.imag(), z.real());
            double value = principal;
            if (have_prev) {
                value = principal + kTwoPi * std::round((re[j] - principal) / kTwoPi);
                if (std::abs(value - re[j]) >= kUnwrapLimit) {
                    throw NumericalError("phase unwrap jump of " +
                                         format_time(std::abs(value - re[j])) +
                                         " >= pi/2 at t = " + format_time(t) +
                                         " in component " + std::to_string(j) +
                                         "; reduce dt");
                }
            }
            re[j] = value;
            im[j] = -std::log(r);
        }
        have_prev = true;
    };

    PhaseTrajectory traj;
    traj.model = model;
    traj.variant = variant;
    traj.dt = dt;
    traj.stride = stride;

    const long steps = rk4_step_count(dt, T);
    Eigen::VectorXcd psi = psi0;
    for (long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        recover(psi, t);
        if (k % stride == 0 || k == steps) {
            traj.times.push_back(t);
            PhaseState y(4 * model.m);
            Eigen::VectorXd amp(n);
            for (int mode = 0; mode < model.m; ++mode) {
                y[4 * mode] = re[2 * mode];
                y[4 * mode + 1] = im[2 * mode];
                y[4 * mode + 2] = re[2 * mode + 1];
                y[4 * mode + 3] = im[2 * mode + 1];
            }
            for (int j = 0; j < n; ++j) amp[j] = std::abs(psi[j]);
            traj.states.push_back(std::move(y));
            traj.raw_amplitudes.push_back(std::move(amp));
        }
        if (k < steps) {
            psi = rk4_step(psi, t, dt, rhs);
        }
    }
    return traj;
}

Eigen::VectorXd amplitudes(const PhaseState& y) {
    const int m = mode_count(y);
    Eigen::VectorXd amp(2 * m);
    for (int k = 0; k < m; ++k) {
        const double eu = std::clamp(-y[4 * k + 1], -700.0, 700.0);
        const double ed = std::clamp(-y[4 * k + 3], -700.0, 700.0);
        amp[2 * k] = std::exp(eu);
        amp[2 * k + 1] = std::exp(ed);
    }
    return amp;
}

std::vector<Eigen::VectorXd> amplitudes(const PhaseTrajectory& traj) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(traj.states.size());
    for (const PhaseState& y : traj.states) out.push_back(amplitudes(y));
    return out;
}

namespace {

void check_series_ref(const PhaseTrajectory& traj, const SeriesRef& s) {
    if (s.mode < 1 || s.mode > traj.m()) {
        throw std::invalid_argument("series mode " + std::to_string(s.mode) +
                                    " out of range 1.." + std::to_string(traj.m()));
    }
}

}  // namespace

std::vector<double> real_series(const PhaseTrajectory& traj, const SeriesRef& s) {
    check_series_ref(traj, s);
    const int idx = re_index(s.mode, s.down);
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const PhaseState& y : traj.states) out.push_back(y[idx]);
    return out;
}

std::vector<double> imag_series(const PhaseTrajectory& traj, const SeriesRef& s) {
    check_series_ref(traj, s);
    const int idx = im_index(s.mode, s.down);
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const PhaseState& y : traj.states) out.push_back(y[idx]);
    return out;
}

std::vector<double> difference_series(const PhaseTrajectory& traj, const PhasePair& p) {
    check_series_ref(traj, p.first);
    check_series_ref(traj, p.second);
    const int a = re_index(p.first.mode, p.first.down);
    const int b = re_index(p.second.mode, p.second.down);
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const PhaseState& y : traj.states) out.push_back(y[a] - y[b]);
    return out;
}

FitWindow default_tail_window(const PhaseTrajectory& traj) {
    double t_min = 0.0;
    bool found = false;
    for (double t : traj.times) {
        if (t > 0.0) {
            t_min = t;
            found = true;
            break;
        }
    }
    if (!found || traj.times.back() <= t_min) {
        throw std::invalid_argument("trajectory has no positive time span to fit");
    }
    const double t_max = traj.times.back();
    // Midpoint of [ln t_min, ln t_max] is ln sqrt(t_min * t_max).
    return {std::sqrt(t_min * t_max), t_max};
}

const char* divergence_class_name(DivergenceClass c) {
    switch (c) {
        case DivergenceClass::Bounded: return "bounded";
        case DivergenceClass::Logarithmic: return "logarithmic";
        case DivergenceClass::FasterThanLogarithmic: return "faster-than-logarithmic";
    }
    return "unknown";
}

SeriesClassification classify_series(const std::vector<double>& times,
                                     const std::vector<double>& values,
                                     const FitWindow& window,
                                     const DivergenceThresholds& thresholds) {
    if (times.size() != values.size()) {
        throw std::invalid_argument("times and values must have equal length");
    }
    std::vector<double> z, y;
    for (size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t > 0.0 && t >= window.t_lo && t <= window.t_hi) {
            z.push_back(std::log(t));
            y.push_back(std::abs(values[i]));
        }
    }
    if (z.size() < 8) {
        throw std::invalid_argument("insufficient samples in fit window (" +
                                    std::to_string(z.size()) + " < 8)");
    }

    SeriesClassification out;
    const auto [y_min, y_max] = std::minmax_element(y.begin(), y.end());
    if (*y_max - *y_min < 1e-12) {
        out.cls = DivergenceClass::Bounded;
        out.slope = 0.0;
        out.intercept = *y_min;
        out.r2 = 1.0;
        out.curvature = 0.0;
        out.onset_time = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    const LineFit line = fit_line(z, y);
    out.slope = line.slope;
    out.intercept = line.intercept;
    out.r2 = line.r2;
    out.curvature = fit_quadratic_coeff(z, y);

    const double span = z.back() - z.front();
    const double bulge = std::abs(out.curvature) * (span / 2.0) * (span / 2.0);
    const double rise = std::abs(line.slope) * span;
    const double rel_curvature = bulge / std::max(rise, 1e-300);

    if (line.slope < thresholds.slope_min) {
        out.cls = DivergenceClass::Bounded;
        out.onset_time = std::numeric_limits<double>::quiet_NaN();
    } else if (out.curvature > 0.0 && rel_curvature > thresholds.curvature_rel) {
        out.cls = DivergenceClass::FasterThanLogarithmic;
        out.onset_time = std::exp(-line.intercept / line.slope);
    } else if (line.r2 >= thresholds.r2_min) {
        out.cls = DivergenceClass::Logarithmic;
        out.onset_time = std::exp(-line.intercept / line.slope);
    } else {
        out.cls = DivergenceClass::FasterThanLogarithmic;
        out.onset_time = std::exp(-line.intercept / line.slope);
    }
    return out;
}

DivergenceReport classify_divergence(const PhaseTrajectory& traj,
                                     const FitWindow& window,
                                     const DivergenceThresholds& thresholds) {
    double t_pos = 0.0;
    bool found = false;
    for (double t : traj.times) {
        if (t > 0.0) {
            t_pos = t;
            found = true;
            break;
        }
    }
    // A log-time fit is meaningless on a short trajectory even if the
    // window is narrower; require 1.5 decades end to end.
    if (!found || traj.times.back() < t_pos * std::pow(10.0, 1.5)) {
        throw std::invalid_argument(
            "trajectory must cover at least 1.5 decades of positive time");
    }
    DivergenceReport report;
    report.window = window;
    report.thresholds = thresholds;
    for (int mode = 1; mode <= traj.m(); ++mode) {
        for (bool down : {false, true}) {
            const SeriesRef ref{mode, down};
            SeriesClassification c =
                classify_series(traj.times, imag_series(traj, ref), window, thresholds);
            c.series = ref;
            report.series.push_back(c);
        }
    }
    return report;
}

DivergenceReport classify_divergence(const PhaseTrajectory& traj,
                                     const DivergenceThresholds& thresholds) {
    return classify_divergence(traj, default_tail_window(traj), thresholds);
}

PhaseDifferenceStats phase_difference_stats(const PhaseTrajectory& traj,
                                            const PhasePair& pair,
                                            std::optional<FitWindow> window,
                                            double conv_threshold) {
    if (traj.times.empty()) {
        throw std::invalid_argument("empty trajectory");
    }
    FitWindow w = window.value_or(FitWindow{0.2 * traj.times.back(), traj.times.back()});
    const std::vector<double> diff = difference_series(traj, pair);
    double lo = 0.0, hi = 0.0, sum = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        if (t < w.t_lo || t > w.t_hi) continue;
        if (count == 0) {
            lo = hi = diff[i];
        } else {
            lo = std::min(lo, diff[i]);
            hi = std::max(hi, diff[i]);
        }
        sum += diff[i];
        ++count;
    }
    if (count == 0) {
        throw std::invalid_argument("no samples inside the statistics window");
    }
    PhaseDifferenceStats stats;
    stats.min = lo;
    stats.max = hi;
    stats.converged = (hi - lo) < conv_threshold;
    stats.limit = sum / static_cast<double>(count);
    return stats;
}

std::vector<TurningPoint> turning_points(const std::vector<double>& times,
                                         const std::vector<double>& values) {
    if (times.size() != values.size()) {
        throw std::invalid_argument("times and values must have equal length");
    }
    std::vector<TurningPoint> events;
    for (size_t i = 1; i + 1 < values.size(); ++i) {
        const double d1 = values[i] - values[i - 1];
        const double d2 = values[i + 1] - values[i];
        int kind = 0;
        if (d1 > 0.0 && d2 < 0.0) kind = +1;
        if (d1 < 0.0 && d2 > 0.0) kind = -1;
        if (kind == 0) continue;
        // Vertex of the parabola through the three samples (uniform
        // spacing assumed; sample grids here are uniform).
        const double h = (times[i + 1] - times[i - 1]) / 2.0;
        const double denom = values[i - 1] - 2.0 * values[i] + values[i + 1];
        double t_star = times[i];
        if (denom != 0.0) {
            t_star += (h / 2.0) * (values[i - 1] - values[i + 1]) / denom;
        }
        events.push_back({t_star, kind});
    }
    return events;
}

}  // namespace oscillnet::phase
