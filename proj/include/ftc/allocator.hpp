#pragma once

#include "ftc/models.hpp"

#include <Eigen/Dense>

#include <array>
#include <stdexcept>

// Control allocation: commanded [T, Mx, My, Mz] onto 8 vertical rotors and
// the aerodynamic surfaces, with a dynamic-pressure blend and one
// saturation-redistribution pass. Fault-unaware by construction.

namespace ftc {

struct AllocatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kSurfaceLimit = 0.35;  // rad

struct ActuatorCommand {
    std::array<double, 8> rotor{};           // throttles in [0, 1], order 1a 1b 2a 2b 3a 3b 4a 4b
    double aileron = 0.0, elevator = 0.0, rudder = 0.0;  // rad, in [-0.35, 0.35]
    std::array<double, 2> hrotor{};          // horizontal-rotor throttles in [0, 1]

    void clamp();
};

struct Wrench {
    double T;           // total vertical thrust, N (positive up)
    double Mx, My, Mz;  // body moments, N m
};

class Allocator {
public:
    Allocator(const AircraftParameters& p, const AeroCoefficientTable& a);

    // 4x8 map from rotor throttles to [T, Mx, My, Mz].
    const Eigen::Matrix<double, 4, 8>& rotor_matrix() const { return B_; }

    // Surface moment per rad of deflection at airspeed V: [aileron->Mx,
    // elevator->My, rudder->Mz].
    Eigen::Vector3d surface_gains(double V) const;

    // q_bar / q_bar_stall clamped to [0, 1].
    double surface_share(double V) const;

    ActuatorCommand allocate(const Wrench& wrench, double V, const ActuatorCommand& trim) const;

    // Residual wrench norm of the last allocate() is not kept (stateless);
    // the caller can multiply back via rotor_matrix() when it cares.

    ActuatorCommand hover_trim(double mass_times_g) const;

private:
    AircraftParameters params_;
    AeroCoefficientTable aero_;
    Eigen::Matrix<double, 4, 8> B_;
    double q_stall_;
};

}  // namespace ftc
