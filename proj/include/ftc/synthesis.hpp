#pragma once

#include "ftc/linsys.hpp"
#include "ftc/models.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Mixed-sensitivity weighting functions, cascaded P-PID loop assembly,
// stacked cost evaluation, derivative-free tuning, and the LQR baseline.

namespace ftc {

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ImproperLoop : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct NoStabilizingGains : SynthesisError {
    using SynthesisError::SynthesisError;
};
struct NotStabilizable : SynthesisError {
    using SynthesisError::SynthesisError;
};

struct SensitivityWeightParams {
    double M;        // peak bound, >= 1
    double A;        // steady-state error bound, in (0, 1)
    double omega_b;  // target bandwidth, rad/s
};

struct ControlWeightParams {
    double r_max;          // reference upper limit
    double u_max;          // actuator authority
    double omega_a = 5.0;  // actuator bandwidth, rad/s
};

struct CascadedGains {
    double kp_outer;  // angle-loop P gain
    double kp, ki, kd;
    double tau_f;     // derivative filter time constant

    std::array<double, 5> as_array() const { return {kp_outer, kp, ki, kd, tau_f}; }
    static CascadedGains from_array(const std::array<double, 5>& v) {
        return {v[0], v[1], v[2], v[3], v[4]};
    }
};

struct ClosedLoop {
    RationalTF S;  // angle-reference sensitivity
    RationalTF T;  // complementary sensitivity
    RationalTF R;  // reference -> commanded moment
};

struct SynthesisResult {
    CascadedGains gains;
    double gamma_achieved;
    int iterations;
    bool stable;
};

RationalTF make_ws(const SensitivityWeightParams& p);
RationalTF make_wr(const ControlWeightParams& p);

// `plant` is the rate transfer function; the 1/s from rate to angle is
// appended internally.
ClosedLoop closed_loop(const RationalTF& plant, const CascadedGains& gains);

struct SynthesisWeights {
    RationalTF W_s, W_t, W_r;
};

double mixed_cost(const ClosedLoop& cl, const SynthesisWeights& w, const FrequencyGrid& grid);

// Serial reference for the stacked-cost grid sweep; the default version
// parallelizes the grid with OpenMP.
double mixed_cost_serial(const ClosedLoop& cl, const SynthesisWeights& w, const FrequencyGrid& grid);

struct TuneOptions {
    int starts = 8;
    int budget_per_start = 2000;
    std::uint64_t seed = 1;
    // Half-width, in decades, of the search box around the initial gains.
    double span_decades = 0.7;
};

SynthesisResult tune(const RationalTF& plant, const SynthesisWeights& weights,
                     const CascadedGains& initial, const TuneOptions& opts = {});

// Continuous algebraic Riccati solve via the Hamiltonian eigenvector method;
// returns the state-feedback gain K = R^-1 B^T P.
Eigen::MatrixXd lqr_design(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                           Eigen::MatrixXd* P_out = nullptr);

// Per-(axis, point) synthesis export, shared with scheduler/robustness.
struct SynthesisExportRow {
    std::string axis;
    int point;
    CascadedGains gains;
    double gamma_achieved;
};

void save_synthesis_export(const std::string& path, const std::vector<SynthesisExportRow>& rows,
                           std::uint64_t seed);
std::vector<SynthesisExportRow> load_synthesis_export(const std::string& path);

}  // namespace ftc
