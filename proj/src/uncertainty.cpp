#include "ftc/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ftc {

PerturbationGrid PerturbationGrid::for_point(const DesignPoint& pt, std::size_t n_v, std::size_t n_g) {
    PerturbationGrid g;
    g.airspeeds.reserve(n_v + 1);
    for (std::size_t i = 0; i < n_v; ++i)
        g.airspeeds.push_back(pt.V_min +
                              (pt.V_max - pt.V_min) * static_cast<double>(i) / static_cast<double>(n_v - 1));
    // Make sure the exact nominal airspeed is a sample.
    bool has_nominal = false;
    for (double v : g.airspeeds)
        if (v == pt.V_bar) has_nominal = true;
    if (!has_nominal) {
        g.airspeeds.push_back(pt.V_bar);
        std::sort(g.airspeeds.begin(), g.airspeeds.end());
    }
    g.gammas.reserve(n_g);
    for (std::size_t i = 0; i < n_g; ++i)
        g.gammas.push_back(kGammaMax * static_cast<double>(i) / static_cast<double>(n_g - 1));
    return g;
}

std::vector<RationalTF> perturbed_samples(Axis axis, const DesignPoint&,
                                          const AircraftParameters& p, const AeroCoefficientTable& a,
                                          const PerturbationGrid& grid) {
    std::vector<RationalTF> out;
    out.reserve(grid.airspeeds.size() * grid.gammas.size());
    for (double V : grid.airspeeds)
        for (double g : grid.gammas) out.push_back(plant_tf(axis, p, a, V, g));
    return out;
}

namespace {

RelativeErrorEnvelope envelope_impl(Axis axis, const DesignPoint& pt, const AircraftParameters& p,
                                    const AeroCoefficientTable& a, const PerturbationGrid& pgrid,
                                    const FrequencyGrid& fgrid, bool parallel) {
    const RationalTF nominal = plant_tf(axis, p, a, pt.V_bar, 0.0);
    const std::vector<RationalTF> samples = perturbed_samples(axis, pt, p, a, pgrid);

    const std::size_t nw = fgrid.omegas.size();
    RelativeErrorEnvelope env;
    env.grid = fgrid;
    env.l.assign(nw, 0.0);

    double scale = 0.0;
    for (double c : nominal.num()) scale = std::max(scale, std::abs(c));

    // Nominal values first (exceptions must not escape the parallel loop).
    std::vector<Complex> g0(nw);
    for (std::size_t k = 0; k < nw; ++k) {
        g0[k] = nominal.eval(Complex(0.0, fgrid.omegas[k]));
        if (std::abs(g0[k]) < 1e-14 * std::max(scale, 1.0))
            throw NominalZero("relative_error_envelope: nominal vanishes on the grid");
    }

#pragma omp parallel for schedule(static) if (parallel)
    for (long k = 0; k < static_cast<long>(nw); ++k) {
        const Complex s(0.0, fgrid.omegas[static_cast<std::size_t>(k)]);
        double worst = 0.0;
        for (const RationalTF& gp : samples)
            worst = std::max(worst, std::abs(gp.eval(s) / g0[static_cast<std::size_t>(k)] - 1.0));
        env.l[static_cast<std::size_t>(k)] = worst;
    }
    return env;
}

}  // namespace

RelativeErrorEnvelope relative_error_envelope(Axis axis, const DesignPoint& pt,
                                              const AircraftParameters& p,
                                              const AeroCoefficientTable& a,
                                              const PerturbationGrid& pgrid,
                                              const FrequencyGrid& fgrid) {
    return envelope_impl(axis, pt, p, a, pgrid, fgrid, true);
}

RelativeErrorEnvelope relative_error_envelope_serial(Axis axis, const DesignPoint& pt,
                                                     const AircraftParameters& p,
                                                     const AeroCoefficientTable& a,
                                                     const PerturbationGrid& pgrid,
                                                     const FrequencyGrid& fgrid) {
    return envelope_impl(axis, pt, p, a, pgrid, fgrid, false);
}

UncertaintyWeight fit_weight(const RelativeErrorEnvelope& env) {
    const std::size_t n = env.l.size();
    for (double v : env.l)
        if (!std::isfinite(v)) throw UncertaintyError("fit_weight: non-finite envelope");

    // |W(jw)| = k sqrt(1 + (w/z)^2) / sqrt(1 + (w/p)^2). Coarse log-space
    // search over (z, p); k is the closed-form log-magnitude LS optimum for
    // each candidate shape. Coverage is enforced afterwards by inflating k.
    const double wlo = env.grid.omegas.front(), whi = env.grid.omegas.back();
    auto shape = [&](double w, double z, double p) {
        const double a2 = 1.0 + (w / z) * (w / z);
        const double b2 = 1.0 + (w / p) * (w / p);
        return std::sqrt(a2 / b2);
    };

    const double floor_l = 1e-12;
    double best_obj = std::numeric_limits<double>::infinity();
    double best_z = whi, best_p = whi, best_logk = 0.0;
    const int nc = 25;
    for (int iz = 0; iz < nc; ++iz) {
        const double z = wlo * std::pow(whi / wlo, static_cast<double>(iz) / (nc - 1));
        for (int ip = 0; ip < nc; ++ip) {
            const double p = wlo * std::pow(whi / wlo, static_cast<double>(ip) / (nc - 1));
            double sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                sum += std::log(std::max(env.l[k], floor_l)) - std::log(shape(env.grid.omegas[k], z, p));
            const double logk = sum / static_cast<double>(n);
            double obj = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double r = std::log(std::max(env.l[k], floor_l)) -
                                 (logk + std::log(shape(env.grid.omegas[k], z, p)));
                obj += r * r;
            }
            if (obj < best_obj) {
                best_obj = obj;
                best_z = z;
                best_p = p;
                best_logk = logk;
            }
        }
    }

    double k_fit = std::exp(best_logk);
    // Inflate until the weight covers the envelope at every grid point.
    double inflate = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double mag = k_fit * shape(env.grid.omegas[i], best_z, best_p);
        if (mag > 0.0) inflate = std::max(inflate, env.l[i] / mag);
    }
    if (20.0 * std::log10(inflate) > 20.0)
        throw FitFailure("fit_weight: coverage needs more than 20 dB of inflation");
    k_fit *= inflate * (1.0 + 1e-9);

    UncertaintyWeight w;
    w.k = k_fit;
    w.z = best_z;
    w.p = best_p;
    // k (s/z + 1)/(s/p + 1)
    w.W_t = RationalTF({k_fit / best_z, k_fit}, {1.0 / best_p, 1.0});
    return w;
}

}  // namespace ftc
