#include "doctest.h"
#include "ftc/allocator.hpp"
#include "ftc/fixture.hpp"
#include "ftc/simulator.hpp"

#include <cmath>
#include <random>

using namespace ftc;

namespace {

AircraftParameters aircraft() {
    return AircraftParameters::from_fixture(Fixture::load("fixtures/aircraft.cfg"));
}

AeroCoefficientTable aero() {
    return AeroCoefficientTable::from_fixture(Fixture::load("fixtures/aircraft.cfg"));
}

}  // namespace

TEST_CASE("hover trim spreads the weight over eight equal throttles") {
    const AircraftParameters p = aircraft();
    const Allocator alloc(p, aero());
    const double W = p.mass * kGravity;
    const ActuatorCommand trim = alloc.hover_trim(W);
    for (double u : trim.rotor) CHECK(u == trim.rotor[0]);
    Eigen::Matrix<double, 8, 1> u;
    for (int i = 0; i < 8; ++i) u(i) = trim.rotor[static_cast<std::size_t>(i)];
    const Eigen::Vector4d w = alloc.rotor_matrix() * u;
    CHECK(w(0) == doctest::Approx(W).epsilon(1e-12));
    CHECK(std::abs(w(1)) < 1e-10);
    CHECK(std::abs(w(2)) < 1e-10);
    CHECK(std::abs(w(3)) < 1e-10);
}

TEST_CASE("symmetric pure-thrust demands come back as equal throttles") {
    const AircraftParameters p = aircraft();
    const Allocator alloc(p, aero());
    const ActuatorCommand trim = alloc.hover_trim(p.mass * kGravity);
    const ActuatorCommand out = alloc.allocate({0.6 * p.mass * kGravity, 0.0, 0.0, 0.0}, 0.0, trim);
    for (double u : out.rotor) CHECK(std::abs(u - out.rotor[0]) <= 1e-12);
    CHECK(out.aileron == 0.0);
    CHECK(out.elevator == 0.0);
    CHECK(out.rudder == 0.0);
}

TEST_CASE("unsaturated demands multiply back to the commanded wrench") {
    const AircraftParameters p = aircraft();
    const AeroCoefficientTable a = aero();
    const Allocator alloc(p, a);
    const double W = p.mass * kGravity;
    const ActuatorCommand trim = alloc.hover_trim(W);
    std::mt19937 rng(77u);
    std::uniform_real_distribution<double> thrust(0.6 * W, 1.3 * W);
    std::uniform_real_distribution<double> moment(-2.0, 2.0);
    std::uniform_real_distribution<double> speed(0.0, 13.0);
    const double scale = W;
    for (int k = 0; k < 1000; ++k) {
        const Wrench demand{thrust(rng), moment(rng), moment(rng), 0.25 * moment(rng)};
        const double V = speed(rng);
        const ActuatorCommand out = alloc.allocate(demand, V, trim);
        // Skip the rare saturated draws; the contract is exactness on the
        // unsaturated set.
        bool saturated = false;
        for (double u : out.rotor) saturated = saturated || u <= 0.0 || u >= 1.0;
        saturated = saturated || std::abs(out.aileron) >= kSurfaceLimit ||
                    std::abs(out.elevator) >= kSurfaceLimit || std::abs(out.rudder) >= kSurfaceLimit;
        if (saturated) continue;
        Eigen::Matrix<double, 8, 1> u;
        for (int i = 0; i < 8; ++i) u(i) = out.rotor[static_cast<std::size_t>(i)];
        const Eigen::Vector4d rotor_w = alloc.rotor_matrix() * u;
        const Eigen::Vector3d g = alloc.surface_gains(V);
        const double Mx = rotor_w(1) + g(0) * out.aileron;
        const double My = rotor_w(2) + g(1) * out.elevator;
        const double Mz = rotor_w(3) + g(2) * out.rudder;
        CHECK(std::abs(rotor_w(0) - demand.T) <= 1e-9 * scale);
        CHECK(std::abs(Mx - demand.Mx) <= 1e-9 * scale);
        CHECK(std::abs(My - demand.My) <= 1e-9 * scale);
        CHECK(std::abs(Mz - demand.Mz) <= 1e-9 * scale);
    }
}

TEST_CASE("outputs always stay inside the actuator boxes") {
    const AircraftParameters p = aircraft();
    const Allocator alloc(p, aero());
    const double W = p.mass * kGravity;
    const ActuatorCommand trim = alloc.hover_trim(W);
    std::mt19937 rng(78u);
    std::uniform_real_distribution<double> thrust(-0.5 * W, 3.0 * W);
    std::uniform_real_distribution<double> moment(-60.0, 60.0);
    std::uniform_real_distribution<double> speed(0.0, 13.0);
    for (int k = 0; k < 1000; ++k) {
        const ActuatorCommand out =
            alloc.allocate({thrust(rng), moment(rng), moment(rng), moment(rng)}, speed(rng), trim);
        for (double u : out.rotor) {
            CHECK(u >= 0.0);
            CHECK(u <= 1.0);
        }
        CHECK(std::abs(out.aileron) <= kSurfaceLimit);
        CHECK(std::abs(out.elevator) <= kSurfaceLimit);
        CHECK(std::abs(out.rudder) <= kSurfaceLimit);
    }
}

TEST_CASE("surface share follows dynamic pressure and saturates at stall") {
    const Allocator alloc(aircraft(), aero());
    CHECK(alloc.surface_share(0.0) == 0.0);
    CHECK(alloc.surface_share(kStallSpeed) == doctest::Approx(1.0));
    CHECK(alloc.surface_share(20.0) == 1.0);
    const double half = alloc.surface_share(kStallSpeed / 2.0);
    CHECK(half == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("degenerate rotor geometry is rejected") {
    AircraftParameters p = aircraft();
    p.l1 = p.l2 = p.l3 = p.l4 = 1e-300;  // no lateral arms: roll row vanishes
    CHECK_THROWS_AS(Allocator(p, aero()), AllocatorError);
}
