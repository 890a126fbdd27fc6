#include "ftc/synthesis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace ftc {

RationalTF make_ws(const SensitivityWeightParams& p) {
    if (p.M < 1.0 || p.A <= 0.0 || p.A >= 1.0 || p.omega_b <= 0.0)
        throw SynthesisError("make_ws: invalid weight parameters");
    return RationalTF({1.0 / p.M, p.omega_b}, {1.0, p.A * p.omega_b});
}

RationalTF make_wr(const ControlWeightParams& p) {
    if (p.r_max <= 0.0 || p.u_max <= 0.0 || p.omega_a <= 0.0)
        throw SynthesisError("make_wr: invalid weight parameters");
    return RationalTF({p.r_max / p.u_max, p.omega_a * 1e-3}, {1.0, p.omega_a});
}

ClosedLoop closed_loop(const RationalTF& plant, const CascadedGains& g) {
    if (g.tau_f <= 0.0) throw SynthesisError("closed_loop: tau_f must be positive");
    // Inner PID: C(s) = kp + ki/s + kd s/(tau_f s + 1)
    //          = (kp s (tau_f s + 1) + ki (tau_f s + 1) + kd s^2) / (s (tau_f s + 1))
    const std::vector<double> nc = {g.kp * g.tau_f + g.kd, g.kp + g.ki * g.tau_f, g.ki};
    const std::vector<double> dc = {g.tau_f, 1.0, 0.0};

    const std::vector<double>& ng = plant.num();
    const std::vector<double>& dg = plant.den();

    // D = s (dc dg + nc ng) + kp_outer nc ng
    const std::vector<double> ncng = poly::mul(nc, ng);
    const std::vector<double> inner = poly::add(poly::mul(dc, dg), ncng);
    const std::vector<double> s_poly = {1.0, 0.0};
    const std::vector<double> D = poly::add(poly::mul(s_poly, inner), poly::scale(ncng, g.kp_outer));

    ClosedLoop cl;
    cl.S = RationalTF(poly::mul(s_poly, inner), D).reduced();
    cl.T = RationalTF(poly::scale(ncng, g.kp_outer), D).reduced();
    cl.R = RationalTF(poly::mul(s_poly, poly::scale(poly::mul(nc, dg), g.kp_outer)), D).reduced();
    if (!cl.S.is_proper() || !cl.T.is_proper() || !cl.R.is_proper())
        throw ImproperLoop("closed_loop: assembly produced an improper transfer function");
    return cl;
}

namespace {

double stacked_mag(const ClosedLoop& cl, const SynthesisWeights& w, double omega) {
    const Complex s(0.0, omega);
    const double a = std::abs(w.W_s.eval(s) * cl.S.eval(s));
    const double b = std::abs(w.W_t.eval(s) * cl.T.eval(s));
    const double c = std::abs(w.W_r.eval(s) * cl.R.eval(s));
    return std::sqrt(a * a + b * b + c * c);
}

// Golden-section refinement of the peak over [lo, hi] in log-frequency.
double golden_peak(const ClosedLoop& cl, const SynthesisWeights& w, double lo, double hi) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(lo), b = std::log(hi);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = stacked_mag(cl, w, std::exp(c)), fd = stacked_mag(cl, w, std::exp(d));
    for (int it = 0; it < 40 && (b - a) > 1e-10; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = stacked_mag(cl, w, std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = stacked_mag(cl, w, std::exp(d));
        }
    }
    return std::max(fc, fd);
}

double mixed_cost_impl(const ClosedLoop& cl, const SynthesisWeights& w, const FrequencyGrid& grid,
                       bool parallel) {
    const std::size_t n = grid.omegas.size();
    std::vector<double> mags(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long k = 0; k < static_cast<long>(n); ++k)
        mags[static_cast<std::size_t>(k)] = stacked_mag(cl, w, grid.omegas[static_cast<std::size_t>(k)]);
    std::size_t imax = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (mags[k] > mags[imax]) imax = k;
    const double lo = grid.omegas[imax > 0 ? imax - 1 : 0];
    const double hi = grid.omegas[std::min(imax + 1, n - 1)];
    return std::max(mags[imax], golden_peak(cl, w, lo, hi));
}

}  // namespace

double mixed_cost(const ClosedLoop& cl, const SynthesisWeights& w, const FrequencyGrid& grid) {
    return mixed_cost_impl(cl, w, grid, true);
}

double mixed_cost_serial(const ClosedLoop& cl, const SynthesisWeights& w, const FrequencyGrid& grid) {
    return mixed_cost_impl(cl, w, grid, false);
}

namespace {

double max_pole_real(const RationalTF& tf) {
    if (tf.den_degree() < 1) return -std::numeric_limits<double>::infinity();
    double m = -std::numeric_limits<double>::infinity();
    for (const Complex& p : poles(tf)) m = std::max(m, p.real());
    return m;
}

// Tuning objective: stacked cost when stable, smooth instability penalty
// otherwise.
double tune_objective(const RationalTF& plant, const SynthesisWeights& w, const FrequencyGrid& grid,
                      const CascadedGains& g) {
    if (g.tau_f <= 0.0 || !std::isfinite(g.kp) || !std::isfinite(g.ki) || !std::isfinite(g.kd) ||
        !std::isfinite(g.kp_outer) || !std::isfinite(g.tau_f))
        return 1e12;
    try {
        const ClosedLoop cl = closed_loop(plant, g);
        const double worst = std::max({max_pole_real(cl.S), max_pole_real(cl.T), max_pole_real(cl.R)});
        if (worst >= -kStabilityEps) return 1e6 + worst;
        return mixed_cost_serial(cl, w, grid);
    } catch (const LinsysError&) {
        return 1e12;
    } catch (const SynthesisError&) {
        return 1e12;
    }
}

struct NMResult {
    std::array<double, 5> x;
    double f;
    int evals;
};

// Plain Nelder-Mead in the 5-dimensional log-gain space.
template <typename F>
NMResult nelder_mead(F&& fn, const std::array<double, 5>& x0, int budget) {
    constexpr int n = 5;
    std::vector<std::array<double, 5>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (int i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += 0.4;
    int evals = 0;
    for (int i = 0; i <= n; ++i) {
        fv[static_cast<std::size_t>(i)] = fn(simplex[static_cast<std::size_t>(i)]);
        ++evals;
    }
    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::array<double, 5>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = fv[idx[i]];
        }
        simplex = s2;
        fv = f2;
    };
    order();
    while (evals < budget) {
        std::array<double, 5> centroid{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[static_cast<std::size_t>(j)] += simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / n;
        auto affine = [&](double t) {
            std::array<double, 5> p{};
            for (int j = 0; j < n; ++j)
                p[static_cast<std::size_t>(j)] =
                    centroid[static_cast<std::size_t>(j)] +
                    t * (centroid[static_cast<std::size_t>(j)] - simplex[n][static_cast<std::size_t>(j)]);
            return p;
        };
        const auto xr = affine(1.0);
        const double fr = fn(xr);
        ++evals;
        if (fr < fv[0]) {
            const auto xe = affine(2.0);
            const double fe = fn(xe);
            ++evals;
            if (fe < fr) {
                simplex[n] = xe;
                fv[n] = fe;
            } else {
                simplex[n] = xr;
                fv[n] = fr;
            }
        } else if (fr < fv[n - 1]) {
            simplex[n] = xr;
            fv[n] = fr;
        } else {
            const auto xc = affine(fr < fv[n] ? 0.5 : -0.5);
            const double fc = fn(xc);
            ++evals;
            if (fc < std::min(fr, fv[n])) {
                simplex[n] = xc;
                fv[n] = fc;
            } else {
                // shrink toward best
                for (int i = 1; i <= n; ++i) {
                    for (int j = 0; j < n; ++j)
                        simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                            0.5 * (simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                   simplex[0][static_cast<std::size_t>(j)]);
                    fv[static_cast<std::size_t>(i)] = fn(simplex[static_cast<std::size_t>(i)]);
                    ++evals;
                }
            }
        }
        order();
        // simplex collapse
        double spread = 0.0;
        for (int j = 0; j < n; ++j)
            spread = std::max(spread, std::abs(simplex[n][static_cast<std::size_t>(j)] - simplex[0][static_cast<std::size_t>(j)]));
        if (spread < 1e-10 && std::abs(fv[n] - fv[0]) < 1e-12 * std::max(1.0, std::abs(fv[0]))) break;
    }
    return {simplex[0], fv[0], evals};
}

std::array<double, 5> to_log(const CascadedGains& g) {
    return {std::log(g.kp_outer), std::log(g.kp), std::log(g.ki), std::log(g.kd), std::log(g.tau_f)};
}

CascadedGains from_log(const std::array<double, 5>& x) {
    return {std::exp(x[0]), std::exp(x[1]), std::exp(x[2]), std::exp(x[3]), std::exp(x[4])};
}

}  // namespace

SynthesisResult tune(const RationalTF& plant, const SynthesisWeights& weights,
                     const CascadedGains& initial, const TuneOptions& opts) {
    const FrequencyGrid grid = FrequencyGrid::log_default();

    // Box-bounded search: 1.5 decades around the seed for the gains, an
    // absolute window for the derivative filter. Projection keeps the
    // simplex out of degenerate corners (vanishing integral action, open
    // outer loop) that the cost surface barely distinguishes.
    std::array<double, 5> lo = to_log(initial), hi = lo;
    const double span = opts.span_decades * std::log(10.0);
    for (int j = 0; j < 4; ++j) {
        lo[static_cast<std::size_t>(j)] -= span;
        hi[static_cast<std::size_t>(j)] += span;
    }
    lo[4] = std::log(5e-3);
    hi[4] = std::log(0.3);
    auto project = [&](std::array<double, 5> x) {
        for (int j = 0; j < 5; ++j)
            x[static_cast<std::size_t>(j)] = std::clamp(x[static_cast<std::size_t>(j)],
                                                        lo[static_cast<std::size_t>(j)],
                                                        hi[static_cast<std::size_t>(j)]);
        return x;
    };
    auto objective = [&](const std::array<double, 5>& x) {
        return tune_objective(plant, weights, grid, from_log(project(x)));
    };

    // Log-spaced scalings of the seed, lightly jittered per start.
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::vector<std::array<double, 5>> starts;
    for (int i = 0; i < opts.starts; ++i) {
        const double f = std::pow(10.0, -0.4 + 0.8 * static_cast<double>(i) /
                                             std::max(1, opts.starts - 1));
        std::array<double, 5> x = to_log(initial);
        for (int j = 0; j < 4; ++j) x[static_cast<std::size_t>(j)] += std::log(f) + jitter(rng);
        starts.push_back(x);
    }

    std::vector<NMResult> results(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(starts.size()); ++i)
        results[static_cast<std::size_t>(i)] =
            nelder_mead(objective, starts[static_cast<std::size_t>(i)], opts.budget_per_start);

    const NMResult* best = nullptr;
    int total_evals = 0;
    for (const NMResult& r : results) {
        total_evals += r.evals;
        if (!best || r.f < best->f) best = &r;
    }
    if (!best || best->f >= 1e6)
        throw NoStabilizingGains("tune: no start reached a stabilizing gain set");

    SynthesisResult out;
    out.gains = from_log(project(best->x));
    out.iterations = total_evals;
    out.stable = true;
    // Report the cost exactly as a re-evaluation would reproduce it.
    out.gamma_achieved = mixed_cost_serial(closed_loop(plant, out.gains), weights, grid);
    return out;
}

Eigen::MatrixXd lqr_design(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                           const Eigen::MatrixXd& Q, const Eigen::MatrixXd& R,
                           Eigen::MatrixXd* P_out) {
    const long n = A.rows();
    const Eigen::MatrixXd Rinv = R.inverse();
    Eigen::MatrixXd H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = A;
    H.topRightCorner(n, n) = -B * Rinv * B.transpose();
    H.bottomLeftCorner(n, n) = -Q;
    H.bottomRightCorner(n, n) = -A.transpose();

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.cast<Complex>());
    Eigen::MatrixXcd X1(n, n), X2(n, n);
    long found = 0;
    for (long i = 0; i < 2 * n && found < n; ++i) {
        if (es.eigenvalues()(i).real() < 0.0) {
            X1.col(found) = es.eigenvectors().col(i).head(n);
            X2.col(found) = es.eigenvectors().col(i).tail(n);
            ++found;
        }
    }
    if (found != n) throw NotStabilizable("lqr_design: stable invariant subspace has wrong dimension");

    const Eigen::MatrixXcd Pc = X2 * X1.inverse();
    Eigen::MatrixXd P = Pc.real();
    P = 0.5 * (P + P.transpose());  // symmetrize

    if (!P.allFinite())
        throw NotStabilizable("lqr_design: stable invariant subspace is not a graph");
    const double residual = (A.transpose() * P + P * A - P * B * Rinv * B.transpose() * P + Q).norm();
    if (residual > 1e-8 * (1.0 + P.norm()))
        throw SynthesisError("lqr_design: Riccati residual too large");
    if (P_out) *P_out = P;
    return Rinv * B.transpose() * P;
}

void save_synthesis_export(const std::string& path, const std::vector<SynthesisExportRow>& rows,
                           std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw SynthesisError("cannot write synthesis export: " + path);
    out << "# synthesis export v1 seed=" << seed << "\n";
    out << "# axis point kp_outer kp ki kd tau_f gamma\n";
    char buf[512];
    for (const SynthesisExportRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s %d %.17g %.17g %.17g %.17g %.17g %.17g\n", r.axis.c_str(),
                      r.point, r.gains.kp_outer, r.gains.kp, r.gains.ki, r.gains.kd, r.gains.tau_f,
                      r.gamma_achieved);
        out << buf;
    }
}

std::vector<SynthesisExportRow> load_synthesis_export(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SynthesisError("cannot open synthesis export: " + path);
    std::vector<SynthesisExportRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        SynthesisExportRow r;
        if (!(ss >> r.axis >> r.point >> r.gains.kp_outer >> r.gains.kp >> r.gains.ki >> r.gains.kd >>
              r.gains.tau_f >> r.gamma_achieved))
            throw SynthesisError("malformed synthesis export line: " + line);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace ftc
