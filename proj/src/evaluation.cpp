#include "ftc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ftc {

const char* channel_name(Channel c) {
    switch (c) {
        case Channel::Altitude: return "altitude";
        case Channel::Roll: return "roll";
        case Channel::Pitch: return "pitch";
        default: return "yaw";
    }
}

namespace {

double channel_error(const SimRecord& r, Channel c) {
    constexpr double kRad2Deg = 180.0 / M_PI;
    switch (c) {
        case Channel::Altitude: return r.h_ref - (-r.state.pos.z());
        case Channel::Roll: return (r.phi_ref - r.phi) * kRad2Deg;
        case Channel::Pitch: return (r.theta_ref - r.theta) * kRad2Deg;
        default: {
            double e = r.psi_ref - r.psi;
            while (e > M_PI) e -= 2.0 * M_PI;
            while (e < -M_PI) e += 2.0 * M_PI;
            return e * kRad2Deg;
        }
    }
}

}  // namespace

double rmse(const SimLog& log, Channel channel, const Window& window) {
    if (log.records.empty()) throw EmptyWindow("rmse: empty log");
    if (window.t1 < window.t0) throw EmptyWindow("rmse: window end precedes start");
    double sum = 0.0;
    long n = 0;
    const double half = 0.5 * log.sample_dt;
    for (const SimRecord& r : log.records) {
        if (r.t < window.t0 - half || r.t > window.t1 + half) continue;
        const double e = channel_error(r, channel);
        sum += e * e;
        ++n;
    }
    if (n == 0) throw EmptyWindow("rmse: no samples inside window");
    return std::sqrt(sum / static_cast<double>(n));
}

bool TrackingReport::pass() const {
    return attitude_ordering[0] && attitude_ordering[1] && attitude_ordering[2] && altitude_match;
}

TrackingReport compare(const std::string& case_name, const SimLog& lqr, const SimLog& shif,
                       const SimLog& gs_shif) {
    const SimLog* logs[3] = {&lqr, &shif, &gs_shif};
    for (const SimLog* l : logs)
        if (l->records.empty()) throw EmptyWindow("compare: empty log");
    if (lqr.sample_dt != shif.sample_dt || lqr.sample_dt != gs_shif.sample_dt)
        throw WindowMismatch("compare: sample rates differ across variants");

    TrackingReport rep;
    rep.case_name = case_name;
    rep.window.t0 = 20.0;
    rep.window.t1 = std::min({lqr.records.back().t, shif.records.back().t, gs_shif.records.back().t});
    if (rep.window.t1 <= rep.window.t0)
        throw WindowMismatch("compare: logs end before the evaluation window opens");

    for (int v = 0; v < 3; ++v)
        for (int c = 0; c < 4; ++c)
            rep.e[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)] =
                rmse(*logs[v], static_cast<Channel>(c), rep.window);

    for (int c = 1; c < 4; ++c) {
        const double e_lqr = rep.e[0][static_cast<std::size_t>(c)];
        const double e_shif = rep.e[1][static_cast<std::size_t>(c)];
        const double e_gs = rep.e[2][static_cast<std::size_t>(c)];
        rep.attitude_ordering[static_cast<std::size_t>(c - 1)] =
            e_gs <= (1.0 + kOrderingSlack) * e_shif && e_shif <= (1.0 + kOrderingSlack) * e_lqr;
    }
    // "Almost equal" altitude tracking: every variant stays within the band
    // around the cross-variant mean.
    const double alt_mean = (rep.e[0][0] + rep.e[1][0] + rep.e[2][0]) / 3.0;
    rep.altitude_match = true;
    for (int v = 0; v < 3; ++v)
        rep.altitude_match = rep.altitude_match &&
                             std::abs(rep.e[static_cast<std::size_t>(v)][0] - alt_mean) <=
                                 kAltitudeBand * alt_mean;
    return rep;
}

static const char* kVariantNames[3] = {"lqr", "shif", "gs_shif"};

void save_report_csv(const std::string& path, const std::vector<TrackingReport>& reports) {
    std::ofstream out(path);
    if (!out) throw EvaluationError("cannot write report: " + path);
    out << "case,variant,e_h_m,e_phi_deg,e_theta_deg,e_psi_deg,ordering_roll,ordering_pitch,"
           "ordering_yaw,altitude_match\n";
    char buf[256];
    for (const TrackingReport& r : reports) {
        for (int v = 0; v < 3; ++v) {
            std::snprintf(buf, sizeof(buf), "%s,%s,%.6g,%.6g,%.6g,%.6g,%d,%d,%d,%d\n",
                          r.case_name.c_str(), kVariantNames[v],
                          r.e[static_cast<std::size_t>(v)][0], r.e[static_cast<std::size_t>(v)][1],
                          r.e[static_cast<std::size_t>(v)][2], r.e[static_cast<std::size_t>(v)][3],
                          static_cast<int>(r.attitude_ordering[0]),
                          static_cast<int>(r.attitude_ordering[1]),
                          static_cast<int>(r.attitude_ordering[2]),
                          static_cast<int>(r.altitude_match));
            out << buf;
        }
    }
}

void save_chart_csv(const std::string& path, const std::vector<TrackingReport>& reports) {
    std::ofstream out(path);
    if (!out) throw EvaluationError("cannot write chart data: " + path);
    out << "case,channel,lqr,shif,gs_shif\n";
    char buf[256];
    for (const TrackingReport& r : reports)
        for (int c = 0; c < 4; ++c) {
            std::snprintf(buf, sizeof(buf), "%s,%s,%.6g,%.6g,%.6g\n", r.case_name.c_str(),
                          channel_name(static_cast<Channel>(c)), r.e[0][static_cast<std::size_t>(c)],
                          r.e[1][static_cast<std::size_t>(c)], r.e[2][static_cast<std::size_t>(c)]);
            out << buf;
        }
}

std::string report_table(const std::vector<TrackingReport>& reports) {
    std::ostringstream os;
    char buf[256];
    os << "Reference-tracking RMSE (window 20 s .. end)\n";
    for (const TrackingReport& r : reports) {
        os << "\n" << r.case_name << "\n";
        os << "  method     e_h (m)   e_phi (deg)  e_theta (deg)  e_psi (deg)\n";
        for (int v = 0; v < 3; ++v) {
            std::snprintf(buf, sizeof(buf), "  %-8s  %8.4f   %10.4f   %11.4f   %9.4f\n",
                          kVariantNames[v], r.e[static_cast<std::size_t>(v)][0],
                          r.e[static_cast<std::size_t>(v)][1], r.e[static_cast<std::size_t>(v)][2],
                          r.e[static_cast<std::size_t>(v)][3]);
            os << buf;
        }
        std::snprintf(buf, sizeof(buf),
                      "  ordering (gs<=shif<=lqr, 5%% slack): roll %s, pitch %s, yaw %s; "
                      "altitude within 10%% of mean: %s\n",
                      r.attitude_ordering[0] ? "pass" : "FAIL",
                      r.attitude_ordering[1] ? "pass" : "FAIL",
                      r.attitude_ordering[2] ? "pass" : "FAIL",
                      r.altitude_match ? "pass" : "FAIL");
        os << buf;
    }
    return os.str();
}

}  // namespace ftc
