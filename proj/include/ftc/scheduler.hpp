#pragma once

#include "ftc/models.hpp"
#include "ftc/synthesis.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Piecewise-linear gain scheduling over airspeed, backed by the synthesis
// export file.

namespace ftc {

struct SchedulerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncompleteSchedule : SchedulerError {
    using SchedulerError::SchedulerError;
};

class GainSchedule {
public:
    GainSchedule() = default;

    // Expects one row per (axis, design point); breakpoints are the V_bar values.
    static GainSchedule from_rows(const std::vector<SynthesisExportRow>& rows);
    static GainSchedule load(const std::string& path);

    CascadedGains gains_at(Axis axis, double V) const;
    const std::vector<double>& breakpoints() const { return breakpoints_; }

private:
    std::vector<double> breakpoints_;
    std::map<std::string, std::vector<CascadedGains>> per_axis_;  // indexed like breakpoints_
};

}  // namespace ftc
