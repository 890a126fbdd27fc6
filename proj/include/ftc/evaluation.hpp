#pragma once

#include "ftc/simulator.hpp"

#include <array>
#include <stdexcept>
#include <string>

// Reference-tracking RMSE and the three-way controller comparison.

namespace ftc {

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyWindow : EvaluationError {
    using EvaluationError::EvaluationError;
};
struct WindowMismatch : EvaluationError {
    using EvaluationError::EvaluationError;
};

enum class Channel { Altitude, Roll, Pitch, Yaw };

const char* channel_name(Channel c);

struct Window {
    double t0, t1;
};

// RMSE of reference minus actual over the window samples. Altitude in m,
// attitude channels in degrees.
double rmse(const SimLog& log, Channel channel, const Window& window);

// One case, three variants, indexed LQR / SHIF / GS_SHIF.
struct TrackingReport {
    std::string case_name;
    Window window;
    // [variant][channel]: variants in ControllerVariant order, channels
    // altitude, roll, pitch, yaw.
    std::array<std::array<double, 4>, 3> e;
    std::array<bool, 3> attitude_ordering;  // roll, pitch, yaw: GS <= SHIF <= LQR (5% slack)
    bool altitude_match;                    // all within 10% of each other
    bool pass() const;
};

inline constexpr double kOrderingSlack = 0.05;
inline constexpr double kAltitudeBand = 0.10;

TrackingReport compare(const std::string& case_name, const SimLog& lqr, const SimLog& shif,
                       const SimLog& gs_shif);

void save_report_csv(const std::string& path, const std::vector<TrackingReport>& reports);
// Per-channel grouped values for external bar-chart plotting.
void save_chart_csv(const std::string& path, const std::vector<TrackingReport>& reports);
std::string report_table(const std::vector<TrackingReport>& reports);

}  // namespace ftc
