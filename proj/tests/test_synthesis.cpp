#include "doctest.h"
#include "ftc/fixture.hpp"
#include "ftc/synthesis.hpp"
#include "ftc/workbench.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace ftc;

TEST_CASE("sensitivity weight hits its low- and high-frequency targets") {
    Fixture f = Fixture::load("fixtures/weights.cfg");
    const WeightTable t = WeightTable::from_fixture(f);
    for (int a = 0; a < 3; ++a) {
        for (int pt = 1; pt <= 6; ++pt) {
            const SensitivityWeightParams p = t.sensitivity(static_cast<Axis>(a), pt);
            const RationalTF ws = make_ws(p);
            CHECK(std::abs(std::abs(ws.eval_jw(0.0)) - 1.0 / p.A) <= 1e-10 / p.A);
            // The high-frequency limit is the leading-coefficient ratio.
            const double hf = ws.num()[0] / ws.den()[0];
            CHECK(std::abs(hf - 1.0 / p.M) <= 1e-10);
        }
    }
}

TEST_CASE("control weight hits its low- and high-frequency targets") {
    Fixture f = Fixture::load("fixtures/weights.cfg");
    const WeightTable t = WeightTable::from_fixture(f);
    for (int a = 0; a < 3; ++a) {
        const ControlWeightParams p = t.control[static_cast<std::size_t>(a)];
        const RationalTF wr = make_wr(p);
        CHECK(std::abs(std::abs(wr.eval_jw(0.0)) - 1e-3) <= 1e-10);
        const double hf = wr.num()[0] / wr.den()[0];
        CHECK(std::abs(hf - p.r_max / p.u_max) <= 1e-10);
    }
}

TEST_CASE("weight constructors reject invalid parameters") {
    CHECK_THROWS_AS(make_ws({0.5, 1e-4, 1.0}), SynthesisError);   // M < 1
    CHECK_THROWS_AS(make_ws({2.0, 1.5, 1.0}), SynthesisError);    // A >= 1
    CHECK_THROWS_AS(make_wr({-1.0, 10.0, 5.0}), SynthesisError);  // r_max <= 0
}

TEST_CASE("closed loop satisfies S + T = 1") {
    const RationalTF plant({1.0}, {0.8, 0.2});  // rate plant 1/(J s + c)
    const CascadedGains g{2.0, 6.0, 8.0, 0.4, 0.05};
    const ClosedLoop cl = closed_loop(plant, g);
    for (double w : {1e-3, 0.1, 1.0, 10.0, 300.0}) {
        const Complex sum = cl.S.eval_jw(w) + cl.T.eval_jw(w);
        CHECK(std::abs(sum - 1.0) < 1e-8);
    }
    CHECK(cl.S.is_proper());
    CHECK(cl.T.is_proper());
    CHECK(cl.R.is_proper());
}

TEST_CASE("closed loop matches an independently assembled loop transfer") {
    // T = kp_outer C G / (s (1 + C G) + kp_outer C G) with C the inner PID
    // and G the rate plant; assemble it from scratch with tf algebra.
    const RationalTF plant({2.0}, {0.6, 0.1});
    const CascadedGains g{1.5, 4.0, 3.0, 0.2, 0.08};
    const ClosedLoop cl = closed_loop(plant, g);
    const Complex s(0.0, 0.9);
    const Complex C = g.kp + g.ki / s + g.kd * s / (g.tau_f * s + 1.0);
    const Complex G = plant.eval(s);
    const Complex T_ref = g.kp_outer * C * G / (s * (1.0 + C * G) + g.kp_outer * C * G);
    CHECK(std::abs(cl.T.eval(s) - T_ref) < 1e-9);
    CHECK(std::abs(cl.S.eval(s) - (1.0 - T_ref)) < 1e-9);
}

TEST_CASE("stacked cost dominates each weighted term and matches its serial twin") {
    const RationalTF plant({1.0}, {0.8, 0.2});
    const CascadedGains g{2.0, 6.0, 8.0, 0.4, 0.05};
    const ClosedLoop cl = closed_loop(plant, g);
    SynthesisWeights w;
    w.W_s = make_ws({2.0, 1e-4, 0.5});
    w.W_t = RationalTF::constant(0.6);
    w.W_r = make_wr({0.5, 20.0, 5.0});
    const FrequencyGrid grid = FrequencyGrid::log_default();
    const double cost = mixed_cost(cl, w, grid);
    CHECK(cost == mixed_cost_serial(cl, w, grid));
    for (double omega : grid.omegas) {
        const Complex s(0.0, omega);
        CHECK(cost + 1e-12 >= std::abs(w.W_s.eval(s) * cl.S.eval(s)));
        CHECK(cost + 1e-12 >= std::abs(w.W_t.eval(s) * cl.T.eval(s)));
        CHECK(cost + 1e-12 >= std::abs(w.W_r.eval(s) * cl.R.eval(s)));
    }
}

TEST_CASE("Riccati gain for the double integrator is the textbook value") {
    Eigen::MatrixXd A(2, 2), B(2, 1), Q(2, 2), R(1, 1), P;
    A << 0, 1, 0, 0;
    B << 0, 1;
    Q = Eigen::MatrixXd::Identity(2, 2);
    R << 1;
    const Eigen::MatrixXd K = lqr_design(A, B, Q, R, &P);
    REQUIRE(K.rows() == 1);
    REQUIRE(K.cols() == 2);
    CHECK(std::abs(K(0, 0) - 1.0) < 1e-6);
    CHECK(std::abs(K(0, 1) - std::sqrt(3.0)) < 1e-6);
    const double resid = (A.transpose() * P + P * A -
                          P * B * R.inverse() * B.transpose() * P + Q)
                             .norm();
    CHECK(resid <= 1e-8 * (1.0 + P.norm()));
}

TEST_CASE("Riccati solve rejects an unstabilizable pair") {
    Eigen::MatrixXd A(1, 1), B(1, 1), Q(1, 1), R(1, 1);
    A << 1.0;
    B << 0.0;
    Q << 1.0;
    R << 1.0;
    CHECK_THROWS_AS(lqr_design(A, B, Q, R), SynthesisError);
}

TEST_CASE("tuner returns a stabilizing gain set with a reproducible cost") {
    const RationalTF plant({1.0}, {0.8, 0.2});
    SynthesisWeights w;
    w.W_s = make_ws({2.0, 1e-4, 0.5});
    w.W_t = RationalTF({0.6 / 30.0, 0.6}, {1.0 / 200.0, 1.0});
    w.W_r = make_wr({0.5, 20.0, 5.0});
    TuneOptions opts;
    opts.starts = 2;
    opts.budget_per_start = 300;
    const CascadedGains init{2.0, 8.0, 10.0, 0.4, 0.05};
    const SynthesisResult res = tune(plant, w, init, opts);
    CHECK(res.stable);
    const ClosedLoop cl = closed_loop(plant, res.gains);
    CHECK(is_stable(cl.T.reduced()));
    // The reported cost is exactly what a re-evaluation produces.
    CHECK(res.gamma_achieved == mixed_cost_serial(cl, w, FrequencyGrid::log_default()));
    CHECK(res.gamma_achieved <= mixed_cost_serial(closed_loop(plant, init), w,
                                                  FrequencyGrid::log_default()));
}

TEST_CASE("synthesis export survives a save/load round trip exactly") {
    const std::string path = "build/test_export_roundtrip.txt";
    std::filesystem::create_directories("build");
    std::vector<SynthesisExportRow> rows;
    rows.push_back({"roll", 3, {1.2345678901234567, 5.0, 8.0 / 3.0, 0.1, 0.05}, 0.7123});
    rows.push_back({"yaw", 6, {2.0, 4.0, 6.0, 0.25, 0.0123456789012345}, 1.01});
    save_synthesis_export(path, rows, 42);
    const auto back = load_synthesis_export(path);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].axis == rows[i].axis);
        CHECK(back[i].point == rows[i].point);
        CHECK(back[i].gains.kp_outer == rows[i].gains.kp_outer);
        CHECK(back[i].gains.kp == rows[i].gains.kp);
        CHECK(back[i].gains.ki == rows[i].gains.ki);
        CHECK(back[i].gains.kd == rows[i].gains.kd);
        CHECK(back[i].gains.tau_f == rows[i].gains.tau_f);
        CHECK(back[i].gamma_achieved == rows[i].gamma_achieved);
    }
    std::remove(path.c_str());
}
