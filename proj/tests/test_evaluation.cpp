#include "doctest.h"
#include "ftc/evaluation.hpp"

#include <cmath>

using namespace ftc;

namespace {

// Minimal log with a constant altitude error and a sinusoidal pitch error.
SimLog synthetic_log(double sample_dt, double duration, double alt_err_m, double pitch_amp_rad) {
    SimLog log;
    log.sample_dt = sample_dt;
    const long n = std::lround(duration / sample_dt);
    for (long k = 0; k <= n; ++k) {
        SimRecord r{};
        r.t = static_cast<double>(k) * sample_dt;
        r.h_ref = 30.0;
        r.state.pos.z() = -(30.0 - alt_err_m);
        r.theta_ref = pitch_amp_rad * std::sin(2.0 * M_PI * r.t);
        r.theta = 0.0;
        log.records.push_back(r);
    }
    return log;
}

}  // namespace

TEST_CASE("constant offsets come back as their magnitude") {
    const SimLog log = synthetic_log(0.01, 60.0, 0.7, 0.0);
    CHECK(rmse(log, Channel::Altitude, {20.0, 60.0}) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rmse(log, Channel::Roll, {20.0, 60.0}) == 0.0);
}

TEST_CASE("a sinusoidal error integrates to amplitude over root two") {
    const double amp = 0.1;  // rad
    const SimLog log = synthetic_log(0.001, 60.0, 0.0, amp);
    const double expect = amp * 180.0 / M_PI / std::sqrt(2.0);
    CHECK(rmse(log, Channel::Pitch, {20.0, 60.0}) == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("attitude errors are reported in degrees") {
    SimLog log = synthetic_log(0.01, 30.0, 0.0, 0.0);
    for (SimRecord& r : log.records) {
        r.phi_ref = 1.0;  // 1 rad of roll error
        r.phi = 0.0;
    }
    CHECK(rmse(log, Channel::Roll, {20.0, 30.0}) == doctest::Approx(180.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("yaw errors wrap across the branch cut") {
    SimLog log = synthetic_log(0.01, 30.0, 0.0, 0.0);
    for (SimRecord& r : log.records) {
        r.psi_ref = M_PI - 0.05;
        r.psi = -M_PI + 0.05;  // true error is 0.1 rad, not ~2 pi
    }
    CHECK(rmse(log, Channel::Yaw, {20.0, 30.0}) ==
          doctest::Approx(0.1 * 180.0 / M_PI).epsilon(1e-9));
}

TEST_CASE("degenerate windows are rejected") {
    const SimLog log = synthetic_log(0.01, 30.0, 0.5, 0.0);
    CHECK_THROWS_AS(rmse(SimLog{}, Channel::Altitude, {0.0, 1.0}), EmptyWindow);
    CHECK_THROWS_AS(rmse(log, Channel::Altitude, {10.0, 5.0}), EmptyWindow);
    CHECK_THROWS_AS(rmse(log, Channel::Altitude, {100.0, 200.0}), EmptyWindow);
}

TEST_CASE("comparison rejects mismatched sample rates and short logs") {
    const SimLog a = synthetic_log(0.01, 30.0, 0.5, 0.0);
    const SimLog b = synthetic_log(0.02, 30.0, 0.5, 0.0);
    CHECK_THROWS_AS(compare("case", a, a, b), WindowMismatch);
    const SimLog c = synthetic_log(0.01, 10.0, 0.5, 0.0);  // ends before 20 s
    CHECK_THROWS_AS(compare("case", a, a, c), WindowMismatch);
    CHECK_THROWS_AS(compare("case", SimLog{}, a, a), EmptyWindow);
}

TEST_CASE("comparison verdicts reflect the orderings and the altitude band") {
    // Attitude RMSE amplitudes: gs < shif < lqr -> ordering passes.
    const SimLog lqr = synthetic_log(0.01, 40.0, 0.50, 0.03);
    const SimLog shif = synthetic_log(0.01, 40.0, 0.52, 0.02);
    const SimLog gs = synthetic_log(0.01, 40.0, 0.48, 0.01);
    const TrackingReport rep = compare("ok", lqr, shif, gs);
    CHECK(rep.attitude_ordering[1]);
    CHECK(rep.attitude_ordering[0]);  // zero roll error everywhere still satisfies <=
    CHECK(rep.altitude_match);        // 0.48 / 0.50 / 0.52 all within 10% of the mean
    CHECK(rep.pass());
    CHECK(rep.window.t0 == 20.0);
    CHECK(rep.window.t1 == doctest::Approx(40.0));

    // Violate the pitch ordering beyond the 5% slack.
    const SimLog gs_bad = synthetic_log(0.01, 40.0, 0.48, 0.025);
    const TrackingReport bad = compare("bad ordering", lqr, shif, gs_bad);
    CHECK_FALSE(bad.attitude_ordering[1]);
    CHECK_FALSE(bad.pass());

    // Violate the altitude band (one variant far from the mean).
    const SimLog gs_alt = synthetic_log(0.01, 40.0, 1.2, 0.01);
    const TrackingReport alt = compare("bad altitude", lqr, shif, gs_alt);
    CHECK_FALSE(alt.altitude_match);
    CHECK_FALSE(alt.pass());
}

TEST_CASE("ordering slack tolerates small inversions") {
    const SimLog lqr = synthetic_log(0.01, 40.0, 0.50, 0.0200);
    const SimLog shif = synthetic_log(0.01, 40.0, 0.50, 0.0206);  // 3% above lqr
    const SimLog gs = synthetic_log(0.01, 40.0, 0.50, 0.0210);    // 2% above shif
    const TrackingReport rep = compare("slack", lqr, shif, gs);
    CHECK(rep.attitude_ordering[1]);
}

TEST_CASE("channel names are stable") {
    CHECK(std::string(channel_name(Channel::Altitude)) == "altitude");
    CHECK(std::string(channel_name(Channel::Roll)) == "roll");
    CHECK(std::string(channel_name(Channel::Pitch)) == "pitch");
    CHECK(std::string(channel_name(Channel::Yaw)) == "yaw");
}
