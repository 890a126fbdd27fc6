#include "doctest.h"
#include "ftc/robustness.hpp"

#include <cmath>

using namespace ftc;

TEST_CASE("robust-stability peak of a lag matches the closed form") {
    // |W_t T| with W_t = k and T = 1/(s+1) peaks at the low-frequency end.
    const RationalTF wt = RationalTF::constant(0.8);
    const RationalTF t({1.0}, {1.0, 1.0});
    double argmax = -1.0;
    const double peak = mu_rs(wt, t, FrequencyGrid::log_default(), &argmax);
    CHECK(peak == doctest::Approx(0.8).epsilon(1e-5));
    CHECK(argmax <= 2e-3);
}

TEST_CASE("robust-stability peak finds an interior resonance") {
    // T = wn^2/(s^2 + 2 zeta wn s + wn^2): peak at ~wn, value 1/(2 zeta).
    const double wn = 3.0, zeta = 0.05;
    const RationalTF t({wn * wn}, {1.0, 2.0 * zeta * wn, wn * wn});
    double argmax = 0.0;
    const double peak = mu_rs(RationalTF::constant(1.0), t, FrequencyGrid::log_default(), &argmax);
    CHECK(peak == doctest::Approx(1.0 / (2.0 * zeta * std::sqrt(1 - zeta * zeta))).epsilon(1e-4));
    CHECK(argmax == doctest::Approx(wn * std::sqrt(1 - 2 * zeta * zeta)).epsilon(1e-2));
}

TEST_CASE("doubling the uncertainty weight doubles the stability peak") {
    const RationalTF wt({0.6 / 30.0, 0.6}, {1.0 / 200.0, 1.0});
    const RationalTF t({9.0}, {1.0, 1.2, 9.0});
    const FrequencyGrid grid = FrequencyGrid::log_default();
    const double m1 = mu_rs(wt, t, grid);
    const double m2 = mu_rs(wt.scaled(2.0), t, grid);
    CHECK(std::abs(m2 - 2.0 * m1) <= 1e-12 * m2);
}

TEST_CASE("performance peak dominates the stability peak") {
    const RationalTF wt({0.6 / 30.0, 0.6}, {1.0 / 200.0, 1.0});
    const RationalTF t({9.0}, {1.0, 1.2, 9.0});
    const RationalTF s({1.0, 1.2, 0.0}, {1.0, 1.2, 9.0});
    const RationalTF ws({0.5, 0.6}, {1.0, 6e-5});
    const FrequencyGrid grid = FrequencyGrid::log_default();
    CHECK(mu_rp(ws, s, wt, t, grid) >= mu_rs(wt, t, grid));
}

TEST_CASE("performance peak equals the pointwise sum maximum") {
    const RationalTF wt = RationalTF::constant(0.3);
    const RationalTF ws = RationalTF::constant(0.4);
    const RationalTF t({1.0}, {1.0, 1.0});
    const RationalTF s({1.0, 0.0}, {1.0, 1.0});  // s/(s+1), complements t
    const FrequencyGrid grid = FrequencyGrid::log_default();
    const double peak = mu_rp(ws, s, wt, t, grid);
    double grid_max = 0.0;
    for (double w : grid.omegas) {
        const double v = 0.4 * std::abs(s.eval_jw(w)) + 0.3 * std::abs(t.eval_jw(w));
        grid_max = std::max(grid_max, v);
    }
    CHECK(peak >= grid_max);
    // The analytic supremum of (0.4 w + 0.3) / sqrt(1 + w^2) is
    // sqrt(0.4^2 + 0.3^2) = 0.5, attained at w = 4/3; the refinement step
    // should close the gap the grid leaves.
    CHECK(peak == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("pole report separates stable and unstable loops") {
    std::vector<LabelledLoop> loops;
    loops.push_back({"roll", 1, RationalTF({1.0}, {1.0, 2.0, 1.0})});
    loops.push_back({"pitch", 2, RationalTF({1.0}, {1.0, -0.5})});
    const auto report = nominal_pole_report(loops);
    REQUIRE(report.size() == 2);
    CHECK(report[0].stable);
    CHECK_FALSE(report[1].stable);
    CHECK(report[0].axis == "roll");
    REQUIRE(report[1].closed_loop_poles.size() == 1);
    CHECK(report[1].closed_loop_poles[0].real() == doctest::Approx(0.5));
}
