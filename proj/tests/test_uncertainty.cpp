#include "doctest.h"
#include "ftc/fixture.hpp"
#include "ftc/uncertainty.hpp"

#include <cmath>

using namespace ftc;

namespace {

AircraftParameters aircraft() {
    return AircraftParameters::from_fixture(Fixture::load("fixtures/aircraft.cfg"));
}

AeroCoefficientTable aero() {
    return AeroCoefficientTable::from_fixture(Fixture::load("fixtures/aircraft.cfg"));
}

}  // namespace

TEST_CASE("perturbation grid contains the interval endpoints and the nominal") {
    for (const DesignPoint& pt : design_points()) {
        const PerturbationGrid g = PerturbationGrid::for_point(pt);
        CHECK(g.airspeeds.front() == pt.V_min);
        CHECK(g.airspeeds.back() == pt.V_max);
        bool has_nominal = false;
        for (double v : g.airspeeds) has_nominal = has_nominal || v == pt.V_bar;
        CHECK(has_nominal);
        CHECK(g.gammas.front() == 0.0);
        CHECK(g.gammas.back() == doctest::Approx(kGammaMax).epsilon(1e-15));
    }
}

TEST_CASE("envelope dominates the pure loss-of-effectiveness floor") {
    // A sample with the full effectiveness loss at the nominal airspeed has
    // relative error exactly 0.6, so the envelope can never drop below it.
    const AircraftParameters p = aircraft();
    const AeroCoefficientTable a = aero();
    const FrequencyGrid fgrid = FrequencyGrid::log_default();
    for (const DesignPoint& pt : design_points()) {
        for (Axis axis : {Axis::Roll, Axis::Pitch, Axis::Yaw}) {
            const RelativeErrorEnvelope env = relative_error_envelope(
                axis, pt, p, a, PerturbationGrid::for_point(pt), fgrid);
            for (double l : env.l) CHECK(l >= kGammaMax - 1e-9);
        }
    }
}

TEST_CASE("parallel and serial envelope kernels agree bit for bit") {
    const AircraftParameters p = aircraft();
    const AeroCoefficientTable a = aero();
    const FrequencyGrid fgrid = FrequencyGrid::log_default();
    const DesignPoint pt = design_points()[3];
    for (Axis axis : {Axis::Roll, Axis::Pitch, Axis::Yaw}) {
        const auto par = relative_error_envelope(axis, pt, p, a,
                                                 PerturbationGrid::for_point(pt), fgrid);
        const auto ser = relative_error_envelope_serial(axis, pt, p, a,
                                                        PerturbationGrid::for_point(pt), fgrid);
        REQUIRE(par.l.size() == ser.l.size());
        for (std::size_t k = 0; k < par.l.size(); ++k) CHECK(par.l[k] == ser.l[k]);
    }
}

TEST_CASE("fitted weight covers the envelope at every grid point") {
    const AircraftParameters p = aircraft();
    const AeroCoefficientTable a = aero();
    const FrequencyGrid fgrid = FrequencyGrid::log_default();
    for (const DesignPoint& pt : design_points()) {
        for (Axis axis : {Axis::Roll, Axis::Pitch, Axis::Yaw}) {
            const RelativeErrorEnvelope env = relative_error_envelope(
                axis, pt, p, a, PerturbationGrid::for_point(pt), fgrid);
            const UncertaintyWeight w = fit_weight(env);
            for (std::size_t k = 0; k < env.l.size(); ++k)
                CHECK(std::abs(w.W_t.eval_jw(env.grid.omegas[k])) >= env.l[k]);
            // First-order, stable, minimum phase by construction.
            CHECK(w.k > 0.0);
            CHECK(w.z > 0.0);
            CHECK(w.p > 0.0);
            CHECK(is_stable(w.W_t));
        }
    }
}

TEST_CASE("weight magnitude matches its closed-form shape") {
    RelativeErrorEnvelope env;
    env.grid = FrequencyGrid::log_default();
    env.l.assign(env.grid.omegas.size(), 0.0);
    // Synthetic envelope produced by an exact first-order shape.
    const double k = 0.7, z = 0.5, p = 40.0;
    for (std::size_t i = 0; i < env.l.size(); ++i) {
        const double w = env.grid.omegas[i];
        env.l[i] = k * std::sqrt((1.0 + (w / z) * (w / z)) / (1.0 + (w / p) * (w / p)));
    }
    const UncertaintyWeight fit = fit_weight(env);
    for (std::size_t i = 0; i < env.l.size(); i += 37) {
        const double mag = std::abs(fit.W_t.eval_jw(env.grid.omegas[i]));
        CHECK(mag >= env.l[i]);
        CHECK(mag <= env.l[i] * 2.0);  // fit stays within a factor of two of a clean shape
    }
}
