#include "doctest.h"
#include "ftc/scheduler.hpp"

#include <cmath>

using namespace ftc;

namespace {

std::vector<SynthesisExportRow> synthetic_rows() {
    std::vector<SynthesisExportRow> rows;
    const char* axes[3] = {"roll", "pitch", "yaw"};
    for (int a = 0; a < 3; ++a) {
        for (int pt = 1; pt <= 6; ++pt) {
            // Distinct, irrational-looking values per (axis, point).
            const double base = 1.0 + 0.37 * a + 0.913 * pt;
            rows.push_back({axes[a], pt,
                            {base, 2.0 * base, 3.0 * base + 1.0 / 3.0, 0.1 * base, 0.01 * base},
                            0.5 + 0.01 * pt});
        }
    }
    return rows;
}

}  // namespace

TEST_CASE("breakpoint queries reproduce the export rows bit for bit") {
    const auto rows = synthetic_rows();
    const GainSchedule s = GainSchedule::from_rows(rows);
    const auto pts = design_points();
    for (const SynthesisExportRow& r : rows) {
        const Axis axis = r.axis == "roll" ? Axis::Roll : (r.axis == "pitch" ? Axis::Pitch : Axis::Yaw);
        const CascadedGains g = s.gains_at(axis, pts[static_cast<std::size_t>(r.point - 1)].V_bar);
        CHECK(g.kp_outer == r.gains.kp_outer);
        CHECK(g.kp == r.gains.kp);
        CHECK(g.ki == r.gains.ki);
        CHECK(g.kd == r.gains.kd);
        CHECK(g.tau_f == r.gains.tau_f);
    }
}

TEST_CASE("midpoint queries are component-wise means") {
    const GainSchedule s = GainSchedule::from_rows(synthetic_rows());
    const auto pts = design_points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double vm = 0.5 * (pts[i].V_bar + pts[i + 1].V_bar);
        for (Axis axis : {Axis::Roll, Axis::Pitch, Axis::Yaw}) {
            const CascadedGains a = s.gains_at(axis, pts[i].V_bar);
            const CascadedGains b = s.gains_at(axis, pts[i + 1].V_bar);
            const CascadedGains m = s.gains_at(axis, vm);
            CHECK(std::abs(m.kp_outer - 0.5 * (a.kp_outer + b.kp_outer)) <= 1e-12);
            CHECK(std::abs(m.kp - 0.5 * (a.kp + b.kp)) <= 1e-12);
            CHECK(std::abs(m.ki - 0.5 * (a.ki + b.ki)) <= 1e-12);
            CHECK(std::abs(m.kd - 0.5 * (a.kd + b.kd)) <= 1e-12);
            CHECK(std::abs(m.tau_f - 0.5 * (a.tau_f + b.tau_f)) <= 1e-12);
        }
    }
}

TEST_CASE("interpolation is continuous across breakpoints") {
    const GainSchedule s = GainSchedule::from_rows(synthetic_rows());
    const auto pts = design_points();
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double v = pts[i].V_bar;
        const double eps = 1e-9;
        const CascadedGains at = s.gains_at(Axis::Pitch, v);
        const CascadedGains below = s.gains_at(Axis::Pitch, v - eps);
        const CascadedGains above = s.gains_at(Axis::Pitch, v + eps);
        CHECK(std::abs(below.kp - at.kp) < 1e-6);
        CHECK(std::abs(above.kp - at.kp) < 1e-6);
    }
}

TEST_CASE("queries clamp to the envelope ends") {
    const GainSchedule s = GainSchedule::from_rows(synthetic_rows());
    const auto pts = design_points();
    const CascadedGains lo = s.gains_at(Axis::Roll, -5.0);
    const CascadedGains first = s.gains_at(Axis::Roll, pts.front().V_bar);
    CHECK(lo.kp == first.kp);
    const CascadedGains hi = s.gains_at(Axis::Roll, 99.0);
    const CascadedGains last = s.gains_at(Axis::Roll, pts.back().V_bar);
    CHECK(hi.kp == last.kp);
}

TEST_CASE("missing rows are rejected") {
    auto rows = synthetic_rows();
    rows.pop_back();  // drop yaw point 6
    CHECK_THROWS_AS(GainSchedule::from_rows(rows), IncompleteSchedule);
    rows.clear();
    CHECK_THROWS_AS(GainSchedule::from_rows(rows), IncompleteSchedule);
}
