#include "ftc/scheduler.hpp"

#include <algorithm>

namespace ftc {

GainSchedule GainSchedule::from_rows(const std::vector<SynthesisExportRow>& rows) {
    GainSchedule s;
    const auto pts = design_points();
    for (const DesignPoint& p : pts) s.breakpoints_.push_back(p.V_bar);
    for (const char* axis : {"roll", "pitch", "yaw"}) {
        std::vector<CascadedGains> gains(pts.size());
        std::vector<bool> seen(pts.size(), false);
        for (const SynthesisExportRow& r : rows) {
            if (r.axis != axis) continue;
            if (r.point < 1 || r.point > static_cast<int>(pts.size()))
                throw SchedulerError("synthesis export references unknown design point");
            gains[static_cast<std::size_t>(r.point - 1)] = r.gains;
            seen[static_cast<std::size_t>(r.point - 1)] = true;
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!seen[i])
                throw IncompleteSchedule(std::string("missing gains for axis ") + axis + " point " +
                                         std::to_string(i + 1));
        s.per_axis_[axis] = std::move(gains);
    }
    return s;
}

GainSchedule GainSchedule::load(const std::string& path) {
    return from_rows(load_synthesis_export(path));
}

CascadedGains GainSchedule::gains_at(Axis axis, double V) const {
    const auto it = per_axis_.find(axis_name(axis));
    if (it == per_axis_.end()) throw IncompleteSchedule("schedule has no gains for axis");
    const std::vector<CascadedGains>& g = it->second;

    if (V <= breakpoints_.front()) return g.front();
    if (V >= breakpoints_.back()) return g.back();
    const auto ub = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), V);
    const std::size_t j = static_cast<std::size_t>(ub - breakpoints_.begin());
    if (breakpoints_[j - 1] == V) return g[j - 1];  // exact breakpoint, bit-for-bit
    const double t = (V - breakpoints_[j - 1]) / (breakpoints_[j] - breakpoints_[j - 1]);

    auto lerp = [t](double a, double b) { return a + t * (b - a); };
    const CascadedGains &a = g[j - 1], &b = g[j];
    return {lerp(a.kp_outer, b.kp_outer), lerp(a.kp, b.kp), lerp(a.ki, b.ki), lerp(a.kd, b.kd),
            lerp(a.tau_f, b.tau_f)};
}

}  // namespace ftc
