#pragma once

#include "ftc/allocator.hpp"
#include "ftc/models.hpp"
#include "ftc/scheduler.hpp"
#include "ftc/synthesis.hpp"

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

// Nonlinear 6-DOF validation environment: rigid body + first-order actuator
// lags + loss-of-effectiveness fault injection + the hover/transition
// protocol with three controller variants.

namespace ftc {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonFiniteState : SimError {
    using SimError::SimError;
};
struct TransitionTimeout : SimError {
    using SimError::SimError;
};

inline constexpr double kGravity = 9.80665;
inline constexpr int kNumActuators = 13;  // 8 rotors, ail, elev, rud, 2 hrotors

// Actuator vector layout shared by commands, lag states, and loss fractions.
enum ActuatorIndex {
    kRotor1a = 0, kRotor1b, kRotor2a, kRotor2b, kRotor3a, kRotor3b, kRotor4a, kRotor4b,
    kAileron, kElevator, kRudder, kHRotor1, kHRotor2
};

using ActuatorVector = std::array<double, kNumActuators>;

ActuatorVector to_vector(const ActuatorCommand& c);
ActuatorCommand from_vector(const ActuatorVector& v);

struct RigidBodyState {
    Eigen::Vector3d pos = Eigen::Vector3d::Zero();    // NED, m
    Eigen::Vector3d vel = Eigen::Vector3d::Zero();    // body frame, m/s
    Eigen::Quaterniond quat = Eigen::Quaterniond::Identity();  // body -> world
    Eigen::Vector3d omega = Eigen::Vector3d::Zero();  // body rates, rad/s

    double airspeed() const { return vel.norm(); }
    Eigen::Vector3d euler_zyx() const;  // roll, pitch, yaw
    bool finite() const;
};

struct ActuatorState {
    ActuatorVector lag{};  // first-order lag outputs

    static ActuatorState at(const ActuatorVector& v) { return {v}; }
};

struct FaultScenario {
    double onset = 1e300;  // s
    ActuatorVector loss{};

    static FaultScenario none() { return {}; }
    static FaultScenario from_fixture(const Fixture& f);
};

struct SimParams {
    AircraftParameters aircraft;
    AeroCoefficientTable aero;
    bool aero_enabled = true;
    double actuator_bandwidth = 5.0;  // rad/s
};

// Effective (post-fault) actuation for the current time.
ActuatorVector apply_fault(const FaultScenario& scenario, double t, const ActuatorVector& commands);

// One fixed-step RK4 integration step; commands are held over the step and
// pass through the actuator lag, then the per-actuator loss scaling.
void step(RigidBodyState& state, ActuatorState& act, const ActuatorVector& commands,
          const ActuatorVector& loss, const SimParams& params, const Allocator& alloc, double dt);

enum class ControllerVariant { LQR, SHIF, GS_SHIF };

const char* variant_name(ControllerVariant v);
ControllerVariant variant_from_name(const std::string& name);

struct SimConfig {
    double dt = 1e-3;
    double duration = 60.0;
    double log_hz = 100.0;
    double h_ref = 30.0;
    double transition_start = 20.0;
    double ramp_duration = 6.0;
    double cruise_throttle = 0.75;
    double settle_time = 3.0;
    double pitch_trim_cap = 0.26;  // rad (~15 deg), just above the stall-speed trim incidence
};

struct SimRecord {
    double t;
    RigidBodyState state;
    double V;
    double phi, theta, psi;
    double h_ref, phi_ref, theta_ref, psi_ref;
    ActuatorVector cmd;
    ActuatorVector eff;
    int mode;  // 0 hover, 1 transition, 2 fixed-wing settle
    CascadedGains active_roll_gains;  // recorded for the passive-FTC contract check
};

struct SimLog {
    double sample_dt;
    std::vector<SimRecord> records;

    void save_csv(const std::string& path) const;
    // Reads the pinned column schema back; '#'-prefixed header lines are
    // skipped. Gain annotations are not round-tripped.
    static SimLog load_csv(const std::string& path);
};

// Attitude-controller bundle for one run.
struct ControllerSet {
    ControllerVariant variant;
    GainSchedule schedule;                 // GS_SHIF
    std::array<CascadedGains, 3> fixed;    // SHIF (roll, pitch, yaw)
    std::array<Eigen::RowVector3d, 3> lqr; // LQR: gains on [int(e), e, rate]
    std::array<double, 3> moment_limit;    // N m, per axis

    CascadedGains gains_for(Axis axis, double V) const;
};

ControllerSet make_controller_set(ControllerVariant variant, const GainSchedule& schedule,
                                  const AircraftParameters& p,
                                  const std::array<double, 3>& moment_limit);

SimLog run_scenario(const FaultScenario& scenario, const ControllerSet& controllers,
                    const SimParams& params, const SimConfig& config);

// Reference trajectory helpers (shared with evaluation).
double pitch_trim_reference(const SimParams& params, const SimConfig& config, double V);

}  // namespace ftc
