#include "ftc/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace ftc {

std::vector<PoleReportEntry> nominal_pole_report(const std::vector<LabelledLoop>& loops) {
    std::vector<PoleReportEntry> out;
    out.reserve(loops.size());
    for (const LabelledLoop& l : loops) {
        PoleReportEntry e;
        e.axis = l.axis;
        e.point = l.point;
        e.closed_loop_poles = poles(l.closed_loop);
        e.stable = true;
        for (const Complex& p : e.closed_loop_poles)
            if (p.real() >= -kStabilityEps) e.stable = false;
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

double refined_peak(const std::function<double(double)>& f, const FrequencyGrid& grid,
                    double* argmax_omega) {
    const std::size_t n = grid.omegas.size();
    std::size_t imax = 0;
    double fmax = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = f(grid.omegas[k]);
        if (v > fmax) {
            fmax = v;
            imax = k;
        }
    }
    double a = std::log(grid.omegas[imax > 0 ? imax - 1 : 0]);
    double b = std::log(grid.omegas[std::min(imax + 1, n - 1)]);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(std::exp(c)), fd = f(std::exp(d));
    for (int it = 0; it < 40 && (b - a) > 1e-10; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(std::exp(d));
        }
    }
    double w_at = grid.omegas[imax];
    double peak = fmax;
    if (fc > peak) {
        peak = fc;
        w_at = std::exp(c);
    }
    if (fd > peak) {
        peak = fd;
        w_at = std::exp(d);
    }
    if (argmax_omega) *argmax_omega = w_at;
    return peak;
}

}  // namespace

double mu_rs(const RationalTF& W_t, const RationalTF& T, const FrequencyGrid& grid,
             double* argmax_omega) {
    if (!is_stable(T)) throw UnstableNominal("mu_rs: nominal closed loop is unstable");
    auto f = [&](double w) { return std::abs(W_t.eval_jw(w) * T.eval_jw(w)); };
    return refined_peak(f, grid, argmax_omega);
}

double mu_rp(const RationalTF& W_s, const RationalTF& S, const RationalTF& W_t, const RationalTF& T,
             const FrequencyGrid& grid, double* argmax_omega) {
    if (!is_stable(S) || !is_stable(T)) throw UnstableNominal("mu_rp: nominal closed loop is unstable");
    auto f = [&](double w) {
        return std::abs(W_s.eval_jw(w) * S.eval_jw(w)) + std::abs(W_t.eval_jw(w) * T.eval_jw(w));
    };
    return refined_peak(f, grid, argmax_omega);
}

void save_mu_report_csv(const std::string& path, const MuReport& report) {
    std::ofstream out(path);
    if (!out) throw RobustnessError("cannot write mu report: " + path);
    out << "axis,point,mu_rs,mu_rp,w_rs,w_rp,pass\n";
    char buf[256];
    for (const MuEntry& e : report.entries) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%.6g,%.6g,%.6g,%.6g,%d\n", e.axis.c_str(), e.point,
                      e.mu_rs, e.mu_rp, e.w_rs, e.w_rp, (e.pass_rs && e.pass_rp) ? 1 : 0);
        out << buf;
    }
}

std::string mu_report_table(const MuReport& report) {
    std::ostringstream os;
    os << "Structured singular values (robust stability / robust performance)\n";
    os << "point |     roll mu_rs  mu_rp |    pitch mu_rs  mu_rp |      yaw mu_rs  mu_rp\n";
    for (int pt = 1; pt <= 6; ++pt) {
        char line[256];
        double v[6] = {0, 0, 0, 0, 0, 0};
        for (const MuEntry& e : report.entries) {
            if (e.point != pt) continue;
            int base = e.axis == "roll" ? 0 : (e.axis == "pitch" ? 2 : 4);
            v[base] = e.mu_rs;
            v[base + 1] = e.mu_rp;
        }
        std::snprintf(line, sizeof(line), "%5d |        %7.3f %7.3f |       %7.3f %7.3f |       %7.3f %7.3f\n",
                      pt, v[0], v[1], v[2], v[3], v[4], v[5]);
        os << line;
    }
    return os.str();
}

}  // namespace ftc
