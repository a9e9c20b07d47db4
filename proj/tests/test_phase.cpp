#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "oscillnet/errors.hpp"
#include "oscillnet/phase.hpp"
#include "test_support.hpp"

using namespace oscillnet::phase;
using oscillnet::NumericalError;
using oscillnet::jordan::JordanBlockModel;
using oscillnet::jordan::Variant;

namespace {

constexpr double kPi = 3.14159265358979323846;

PhaseState random_state(test_support::Rng& rng, int m, double scale = 0.5) {
    PhaseState y(4 * m);
    for (int j = 0; j < 4 * m; ++j) y[j] = rng.range(-scale, scale);
    return y;
}

}  // namespace

TEST_CASE("packed layout indices and labels") {
    CHECK(re_index(1, false) == 0);
    CHECK(im_index(1, false) == 1);
    CHECK(re_index(1, true) == 2);
    CHECK(im_index(1, true) == 3);
    CHECK(re_index(3, false) == 8);
    CHECK(im_index(2, true) == 7);
    CHECK_THROWS_AS(re_index(0, false), std::invalid_argument);
    CHECK(series_label({1, false}) == "d1u");
    CHECK(series_label({3, true}) == "d3d");
    CHECK(pair_label({{2, true}, {1, false}}) == "d2d-d1u");
    CHECK(mode_count(Eigen::VectorXd::Zero(12)) == 3);
    CHECK_THROWS_AS(mode_count(Eigen::VectorXd::Zero(6)), std::invalid_argument);
    CHECK_THROWS_AS(mode_count(Eigen::VectorXd()), std::invalid_argument);
}

TEST_CASE("the six tracked differences cover both branches of modes 1..3") {
    const auto pairs = coupling_pairs(3);
    REQUIRE(pairs.size() == 6);
    const char* expected[] = {"d1d-d1u", "d2d-d1u", "d2u-d1d",
                              "d2d-d2u", "d3d-d2u", "d3u-d3d"};
    for (int i = 0; i < 6; ++i) {
        CHECK(pair_label(pairs[static_cast<size_t>(i)]) == expected[i]);
    }
    CHECK_THROWS_AS(coupling_pairs(2), std::invalid_argument);
}

TEST_CASE("equations of motion at the all-zero state are the frozen vector") {
    const PhaseState zeros = Eigen::VectorXd::Zero(12);
    const PhaseState dy = rhs_unitary(zeros, 0.0, 1.0);
    const double expected[12] = {-1.0, 1.0, -1.0, -1.0, -1.0, 1.0,
                                 -1.0, -1.0, -1.0, 0.0, -1.0, 0.0};
    REQUIRE(dy.size() == 12);
    for (int j = 0; j < 12; ++j) {
        CHECK(dy[j] == expected[j]);
    }
}

TEST_CASE("autonomous and time-dependent forms coincide where they must") {
    test_support::Rng rng(555);
    for (int m : {1, 2, 3, 4}) {
        const PhaseState y = random_state(rng, m);
        // Zero carrier frequency: same function, bit for bit.
        const PhaseState a = rhs_unitary(y, 0.0, 0.8);
        const PhaseState b = rhs_direct(y, 0.0, 0.8, 3.7);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
        // At t = 0 the explicit phase factors are the identity.
        const PhaseState c = rhs_unitary(y, 2.3, 0.8);
        const PhaseState d = rhs_direct(y, 2.3, 0.8, 0.0);
        CHECK((c - d).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("hand-evaluated time-dependent equations at a quarter period") {
    // omega=1, t=pi/4 puts u = 2wt = pi/2 into every trig argument.
    const PhaseState zeros2 = Eigen::VectorXd::Zero(8);
    const PhaseState dy = rhs_direct(zeros2, 1.0, 1.0, kPi / 4.0);
    const double expected[8] = {-1.0, -1.0, -1.0, 1.0, 0.0, -1.0, 0.0, 1.0};
    for (int j = 0; j < 8; ++j) {
        CHECK(dy[j] == doctest::Approx(expected[j]).epsilon(1e-12));
    }
}

TEST_CASE("with zero coupling the last mode is frozen") {
    test_support::Rng rng(808);
    const PhaseState y = random_state(rng, 2);
    const PhaseState dy = rhs_unitary(y, 0.0, 0.0);
    for (int j = 4; j < 8; ++j) CHECK(dy[j] == 0.0);

    const JordanBlockModel model{0.0, 0.0, 2};
    const auto traj = integrate_phases(model, Variant::Unitary, y, 0.01, 1.0, 10);
    for (const auto& state : traj.states) {
        CHECK((state.segment(4, 4) - y.segment(4, 4)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("integration samples t = 0, stride multiples, and the endpoint") {
    const JordanBlockModel model{0.0, 0.0, 1};
    const PhaseState zeros = Eigen::VectorXd::Zero(4);
    const auto traj = integrate_phases(model, Variant::Unitary, zeros, 0.1, 1.0, 3);
    REQUIRE(traj.times.size() == 5);
    const double expected[] = {0.0, 0.3, 0.6, 0.9, 1.0};
    for (int i = 0; i < 5; ++i) {
        CHECK(traj.times[static_cast<size_t>(i)] ==
              doctest::Approx(expected[i]).epsilon(1e-12));
    }
    CHECK(traj.states.size() == 5);
    CHECK_FALSE(traj.guard_tripped);
}

TEST_CASE("integration argument validation") {
    const JordanBlockModel model{0.0, 1.0, 2};
    const PhaseState zeros = Eigen::VectorXd::Zero(8);
    CHECK_THROWS_AS(integrate_phases(model, Variant::Unitary, zeros, 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_phases(model, Variant::Unitary, zeros, 0.1, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_phases(model, Variant::Unitary, zeros, 0.1, 1.0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        integrate_phases(model, Variant::Unitary, Eigen::VectorXd::Zero(4), 0.1, 1.0),
        std::invalid_argument);
    PhaseState bad = zeros;
    bad[3] = std::nan("");
    CHECK_THROWS_AS(integrate_phases(model, Variant::Unitary, bad, 0.1, 1.0),
                    std::invalid_argument);
}

TEST_CASE("initial amplitudes are the exponential of the initial phases") {
    const PhaseState zeros = Eigen::VectorXd::Zero(12);
    const Eigen::VectorXcd psi = initial_psi(zeros);
    REQUIRE(psi.size() == 6);
    for (int j = 0; j < 6; ++j) {
        CHECK(psi[j] == std::complex<double>(1.0, 0.0));
    }

    PhaseState mixed(4);
    mixed << 0.3, 0.1, -0.2, 0.05;
    const Eigen::VectorXcd p = initial_psi(mixed);
    CHECK(std::abs(p[0] - std::exp(std::complex<double>(-0.1, 0.3))) < 1e-15);
    CHECK(std::abs(p[1] - std::exp(std::complex<double>(-0.05, -0.2))) < 1e-15);
}

TEST_CASE("linear-system oracle recovers the initial phases exactly") {
    PhaseState mixed(4);
    mixed << 0.3, 0.1, -0.2, 0.05;
    const JordanBlockModel model{0.5, 0.7, 1};
    const auto traj = integrate_psi_oracle(model, Variant::Unitary,
                                           initial_psi(mixed), 1e-3, 0.1, 10);
    REQUIRE(!traj.states.empty());
    CHECK((traj.states[0] - mixed).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(!traj.raw_amplitudes.empty());
    CHECK(traj.raw_amplitudes[0][0] == doctest::Approx(std::exp(-0.1)).epsilon(1e-12));
}

TEST_CASE("oracle closed form for a single self-coupled mode") {
    // 2x2 system with pure swap coupling d: psi0 = (1,1) is an
    // eigenvector, so delta(t) = -d t on both branches with |psi| = 1.
    const JordanBlockModel model{0.0, 0.7, 1};
    const PhaseState zeros = Eigen::VectorXd::Zero(4);
    const auto traj = integrate_psi_oracle(model, Variant::Unitary,
                                           initial_psi(zeros), 1e-3, 2.0, 100);
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double expect = -0.7 * traj.times[i];
        CHECK(std::abs(traj.states[i][0] - expect) < 1e-10);  // Re up
        CHECK(std::abs(traj.states[i][1]) < 1e-10);           // Im up
        CHECK(std::abs(traj.states[i][2] - expect) < 1e-10);  // Re down
        CHECK(std::abs(traj.states[i][3]) < 1e-10);           // Im down
        CHECK(std::abs(traj.raw_amplitudes[i][0] - 1.0) < 1e-10);
        CHECK(std::abs(traj.raw_amplitudes[i][1] - 1.0) < 1e-10);
    }
}

TEST_CASE("oracle matches the phase equations on the reference run") {
    const JordanBlockModel model{0.0, 1.0, 3};
    const PhaseState zeros = Eigen::VectorXd::Zero(12);
    const auto ode = integrate_phases(model, Variant::Unitary, zeros, 1e-3, 5.0, 10);
    const auto oracle = integrate_psi_oracle(model, Variant::Unitary,
                                             initial_psi(zeros), 1e-3, 5.0, 10);
    REQUIRE(ode.times.size() == oracle.times.size());
    double sup = 0.0;
    for (size_t i = 0; i < ode.times.size(); ++i) {
        sup = std::max(sup, (ode.states[i] - oracle.states[i]).cwiseAbs().maxCoeff());
    }
    CHECK(sup < 1e-6);
}

TEST_CASE("oracle and phase equations agree for a rotating-frame run") {
    const JordanBlockModel model{1.0, 0.5, 2};
    PhaseState init(8);
    init << 0.1, 0.0, -0.1, 0.05, 0.2, -0.05, 0.0, 0.1;
    for (auto variant : {Variant::Unitary, Variant::Direct}) {
        const auto ode = integrate_phases(model, variant, init, 1e-3, 3.0, 10);
        const auto oracle =
            integrate_psi_oracle(model, variant, initial_psi(init), 1e-3, 3.0, 10);
        REQUIRE(ode.times.size() == oracle.times.size());
        double sup = 0.0;
        for (size_t i = 0; i < ode.times.size(); ++i) {
            sup = std::max(sup,
                           (ode.states[i] - oracle.states[i]).cwiseAbs().maxCoeff());
        }
        CHECK(sup < 1e-5);
    }
}

TEST_CASE("overflow guard halts integration as a flagged normal return") {
    const JordanBlockModel model{0.0, 1.0, 3};
    const PhaseState zeros = Eigen::VectorXd::Zero(12);
    const auto traj = integrate_phases(model, Variant::Unitary, zeros, 1e-3, 10.0,
                                       100, GuardSettings{0.5});
    CHECK(traj.guard_tripped);
    REQUIRE(!traj.times.empty());
    CHECK(traj.times.back() == traj.guard_time);
    CHECK(!traj.guard_reason.empty());
    double worst = 0.0;
    for (int j = 1; j < 12; j += 2) {
        worst = std::max(worst, std::abs(traj.states.back()[j]));
    }
    CHECK(worst > 0.5);
}

TEST_CASE("non-finite states abort with a diagnostic") {
    // Opposite-sign imaginary parts make exp(Im up - Im down) overflow
    // inside the first coupling evaluation.
    const JordanBlockModel model{0.0, 1.0, 1};
    PhaseState hot(4);
    hot << 0.0, 600.0, 0.0, -600.0;
    CHECK_THROWS_AS(
        integrate_phases(model, Variant::Unitary, hot, 1e-3, 1.0, 1,
                         GuardSettings{1e9}),
        NumericalError);
}

TEST_CASE("amplitude reconstruction clamps instead of overflowing") {
    PhaseState y(4);
    y << 0.0, 0.0, 0.0, -std::log(2.0);
    const Eigen::VectorXd amp = amplitudes(y);
    REQUIRE(amp.size() == 2);
    CHECK(amp[0] == 1.0);
    CHECK(amp[1] == doctest::Approx(2.0).epsilon(1e-14));

    PhaseState extreme(4);
    extreme << 0.0, -800.0, 0.0, 800.0;
    const Eigen::VectorXd clamped = amplitudes(extreme);
    CHECK(std::isfinite(clamped[0]));
    CHECK(clamped[0] > 1e300);
    CHECK(clamped[1] > 0.0);
    CHECK(clamped[1] < 1e-300);
}

TEST_CASE("raw oracle amplitudes satisfy the exponential identity") {
    const JordanBlockModel model{0.0, 1.0, 3};
    const PhaseState zeros = Eigen::VectorXd::Zero(12);
    const auto traj = integrate_psi_oracle(model, Variant::Unitary,
                                           initial_psi(zeros), 1e-3, 2.0, 10);
    REQUIRE(traj.raw_amplitudes.size() == traj.states.size());
    for (size_t i = 0; i < traj.states.size(); ++i) {
        const Eigen::VectorXd rebuilt = amplitudes(traj.states[i]);
        CHECK((rebuilt - traj.raw_amplitudes[i]).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("series extraction respects the packed layout") {
    const JordanBlockModel model{0.0, 0.0, 2};
    PhaseState init(8);
    init << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0;
    const auto traj = integrate_phases(model, Variant::Unitary, init, 0.1, 0.2, 1);
    CHECK(real_series(traj, {2, false})[0] == 5.0);
    CHECK(imag_series(traj, {2, true})[0] == 8.0);
    CHECK(difference_series(traj, {{2, false}, {1, true}})[0] == 2.0);
    CHECK_THROWS_AS(real_series(traj, {3, false}), std::invalid_argument);
}

TEST_CASE("line fits classify synthetic logarithmic growth") {
    std::vector<double> times, values;
    for (int i = 1; i <= 2000; ++i) {
        const double t = 0.5 * i;
        times.push_back(t);
        values.push_back(2.0 * std::log(t) + 1.0);
    }
    const auto c = classify_series(times, values, {1.0, 1000.0}, {});
    CHECK(c.cls == DivergenceClass::Logarithmic);
    CHECK(c.slope == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(c.intercept == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(c.r2 > 0.999999);
    CHECK(c.onset_time == doctest::Approx(std::exp(-0.5)).epsilon(1e-5));
}

TEST_CASE("constant series are bounded with a perfect fit") {
    std::vector<double> times, values;
    for (int i = 1; i <= 100; ++i) {
        times.push_back(static_cast<double>(i));
        values.push_back(0.25);
    }
    const auto c = classify_series(times, values, {1.0, 100.0}, {});
    CHECK(c.cls == DivergenceClass::Bounded);
    CHECK(c.slope == 0.0);
    CHECK(c.r2 == 1.0);
    CHECK(std::isnan(c.onset_time));
}

TEST_CASE("power-law growth is flagged as faster than logarithmic") {
    std::vector<double> times, values;
    for (int i = 1; i <= 1000; ++i) {
        const double t = static_cast<double>(i);
        times.push_back(t);
        values.push_back(t);  // |y| = t is convex in ln t
    }
    const auto c = classify_series(times, values, {10.0, 1000.0}, {});
    CHECK(c.cls == DivergenceClass::FasterThanLogarithmic);
    CHECK(c.curvature > 0.0);
}

TEST_CASE("classification needs enough samples and trajectory span") {
    std::vector<double> times{1, 2, 3, 4, 5, 6, 7};
    std::vector<double> values{1, 2, 3, 4, 5, 6, 7};
    CHECK_THROWS_AS(classify_series(times, values, {1.0, 7.0}, {}),
                    std::invalid_argument);

    // Trajectory-level classification refuses spans under 1.5 decades.
    const JordanBlockModel model{0.0, 1.0, 3};
    const PhaseState zeros = Eigen::VectorXd::Zero(12);
    const auto short_traj =
        integrate_phases(model, Variant::Unitary, zeros, 1e-3, 2.0, 100);
    CHECK_THROWS_AS(classify_divergence(short_traj), std::invalid_argument);
}

TEST_CASE("default tail window covers the last half in log time") {
    const JordanBlockModel model{0.0, 0.0, 1};
    const PhaseState zeros = Eigen::VectorXd::Zero(4);
    const auto traj = integrate_phases(model, Variant::Unitary, zeros, 0.1, 1000.0, 1);
    const FitWindow w = default_tail_window(traj);
    CHECK(w.t_lo == doctest::Approx(10.0).epsilon(1e-9));  // sqrt(0.1 * 1000)
    CHECK(w.t_hi == doctest::Approx(1000.0).epsilon(1e-12));
}

TEST_CASE("difference statistics summarize the tail window") {
    PhaseTrajectory traj;
    traj.model = {0.0, 0.0, 1};
    for (int i = 0; i <= 100; ++i) {
        const double t = static_cast<double>(i);
        PhaseState y(4);
        y << 0.7, 0.0, 0.0, 0.0;  // Re d1u = 0.7, Re d1d = 0
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    const auto stats = phase_difference_stats(traj, {{1, false}, {1, true}});
    CHECK(stats.min == 0.7);
    CHECK(stats.max == 0.7);
    CHECK(stats.converged);
    CHECK(stats.limit == doctest::Approx(0.7).epsilon(1e-12));

    const auto windowed =
        phase_difference_stats(traj, {{1, false}, {1, true}}, FitWindow{50.0, 100.0});
    CHECK(windowed.min == 0.7);
    CHECK_THROWS_AS(
        phase_difference_stats(traj, {{1, false}, {1, true}}, FitWindow{500.0, 600.0}),
        std::invalid_argument);
}

TEST_CASE("turning points locate extrema of a sampled sine") {
    std::vector<double> times, values;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 0.01 * i;
        times.push_back(t);
        values.push_back(std::sin(t));
    }
    const auto events = turning_points(times, values);
    REQUIRE(events.size() == 3);
    CHECK(events[0].kind == +1);
    CHECK(events[0].t == doctest::Approx(kPi / 2.0).epsilon(1e-3));
    CHECK(events[1].kind == -1);
    CHECK(events[1].t == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-3));
    CHECK(events[2].kind == +1);
    CHECK(events[2].t == doctest::Approx(5.0 * kPi / 2.0).epsilon(1e-3));

    // Plateaus are not turning points.
    const auto none = turning_points({0, 1, 2, 3}, {1.0, 1.0, 1.0, 1.0});
    CHECK(none.empty());
}
