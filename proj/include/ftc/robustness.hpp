#pragma once

#include "ftc/linsys.hpp"

#include <stdexcept>
#include <string>
#include <vector>

// SISO mu-analysis: robust stability peak |W_t T| and robust performance
// peak |W_s S| + |W_t T|, both exact closed forms for one complex
// multiplicative block (plus one performance block for RP).

namespace ftc {

struct RobustnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnstableNominal : RobustnessError {
    using RobustnessError::RobustnessError;
};

struct MuEntry {
    std::string axis;
    int point;
    double mu_rs, mu_rp;
    double w_rs, w_rp;  // argmax frequencies, rad/s
    bool pass_rs, pass_rp;
};

struct MuReport {
    std::vector<MuEntry> entries;
};

struct PoleReportEntry {
    std::string axis;
    int point;
    std::vector<Complex> closed_loop_poles;
    bool stable;
};

struct LabelledLoop {
    std::string axis;
    int point;
    RationalTF closed_loop;  // nominal T (or any tf carrying the closed-loop denominator)
};

std::vector<PoleReportEntry> nominal_pole_report(const std::vector<LabelledLoop>& loops);

// Peak of |W_t(jw) T(jw)| with golden-section refinement near the grid argmax.
double mu_rs(const RationalTF& W_t, const RationalTF& T, const FrequencyGrid& grid,
             double* argmax_omega = nullptr);

// Peak of |W_s S| + |W_t T|.
double mu_rp(const RationalTF& W_s, const RationalTF& S, const RationalTF& W_t, const RationalTF& T,
             const FrequencyGrid& grid, double* argmax_omega = nullptr);

void save_mu_report_csv(const std::string& path, const MuReport& report);
std::string mu_report_table(const MuReport& report);

}  // namespace ftc
