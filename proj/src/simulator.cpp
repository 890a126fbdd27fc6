#include "ftc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace ftc {

ActuatorVector to_vector(const ActuatorCommand& c) {
    ActuatorVector v{};
    for (int i = 0; i < 8; ++i) v[static_cast<std::size_t>(i)] = c.rotor[static_cast<std::size_t>(i)];
    v[kAileron] = c.aileron;
    v[kElevator] = c.elevator;
    v[kRudder] = c.rudder;
    v[kHRotor1] = c.hrotor[0];
    v[kHRotor2] = c.hrotor[1];
    return v;
}

ActuatorCommand from_vector(const ActuatorVector& v) {
    ActuatorCommand c;
    for (int i = 0; i < 8; ++i) c.rotor[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    c.aileron = v[kAileron];
    c.elevator = v[kElevator];
    c.rudder = v[kRudder];
    c.hrotor[0] = v[kHRotor1];
    c.hrotor[1] = v[kHRotor2];
    return c;
}

Eigen::Vector3d RigidBodyState::euler_zyx() const {
    const Eigen::Quaterniond& q = quat;
    const double phi = std::atan2(2.0 * (q.w() * q.x() + q.y() * q.z()),
                                  1.0 - 2.0 * (q.x() * q.x() + q.y() * q.y()));
    const double sinp = std::clamp(2.0 * (q.w() * q.y() - q.z() * q.x()), -1.0, 1.0);
    const double theta = std::asin(sinp);
    const double psi = std::atan2(2.0 * (q.w() * q.z() + q.x() * q.y()),
                                  1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z()));
    return {phi, theta, psi};
}

bool RigidBodyState::finite() const {
    return pos.allFinite() && vel.allFinite() && omega.allFinite() &&
           std::isfinite(quat.w()) && quat.coeffs().allFinite();
}

FaultScenario FaultScenario::from_fixture(const Fixture& f) {
    FaultScenario s;
    s.onset = f.scalar_or("fault.time", 1e300);
    static const char* names[kNumActuators] = {"rotor1a", "rotor1b", "rotor2a", "rotor2b",
                                               "rotor3a", "rotor3b", "rotor4a", "rotor4b",
                                               "aileron", "elevator", "rudder",
                                               "hrotor1", "hrotor2"};
    for (int i = 0; i < kNumActuators; ++i) {
        const std::string key = std::string("fault.losses.") + names[i];
        s.loss[static_cast<std::size_t>(i)] = f.scalar_or(key, 0.0);
        if (s.loss[static_cast<std::size_t>(i)] < 0.0 || s.loss[static_cast<std::size_t>(i)] > 1.0)
            throw SimError("fault loss fraction outside [0, 1]: " + key);
    }
    return s;
}

ActuatorVector apply_fault(const FaultScenario& scenario, double t, const ActuatorVector& commands) {
    if (t < scenario.onset) return commands;
    ActuatorVector out = commands;
    for (int i = 0; i < kNumActuators; ++i)
        out[static_cast<std::size_t>(i)] *= 1.0 - scenario.loss[static_cast<std::size_t>(i)];
    return out;
}

namespace {

struct Derivatives {
    Eigen::Vector3d pos_dot, vel_dot, omega_dot;
    Eigen::Vector4d quat_dot;  // (w, x, y, z)
};

Derivatives dynamics(const RigidBodyState& s, const ActuatorVector& eff, const SimParams& params,
                     const Allocator& alloc) {
    const AircraftParameters& p = params.aircraft;
    const double V = s.vel.norm();
    const double Vc = std::min(V, params.aero.breakpoints.back());  // table clamp

    Eigen::Vector3d force = s.quat.conjugate() * Eigen::Vector3d(0.0, 0.0, p.mass * kGravity);
    Eigen::Vector3d moment = Eigen::Vector3d::Zero();

    // Vertical rotors through the shared effectiveness matrix.
    Eigen::Matrix<double, 8, 1> u;
    for (int i = 0; i < 8; ++i) u(i) = eff[static_cast<std::size_t>(i)];
    const Eigen::Vector4d rotor_wrench = alloc.rotor_matrix() * u;
    force.z() -= rotor_wrench(0);
    moment += rotor_wrench.tail<3>();

    // Horizontal rotors push along body x.
    force.x() += p.hrotor_thrust * (eff[kHRotor1] + eff[kHRotor2]);

    if (params.aero_enabled && V > 1e-9) {
        const double qbar = 0.5 * p.rho * V * V;
        const double alpha = std::atan2(s.vel.z(), std::max(s.vel.x(), 0.1));
        const double beta = std::asin(std::clamp(s.vel.y() / V, -1.0, 1.0));

        const double CL = params.aero.interp(params.aero.C_L0, Vc) +
                          params.aero.interp(params.aero.C_La, Vc) * alpha;
        const double CD = params.aero.interp(params.aero.C_D0, Vc) +
                          params.aero.interp(params.aero.k_ind, Vc) * CL * CL;
        const double lift = qbar * p.S * CL;
        const double drag = qbar * p.S * CD;
        force.x() += -drag * std::cos(alpha) + lift * std::sin(alpha);
        force.z() += -drag * std::sin(alpha) - lift * std::cos(alpha);

        // Linear-model damping/restoring moments (derivatives are <= 0).
        moment.x() += roll_damping(p, params.aero, Vc) * s.omega.x();
        moment.y() += pitch_damping(p, params.aero, Vc) * s.omega.y() +
                      pitch_stiffness(p, params.aero, Vc) * alpha;
        // yaw_stiffness is expressed against yaw angle (beta ~ -psi); against
        // physical sideslip the weathercock derivative flips sign.
        moment.z() += yaw_damping(p, params.aero, Vc) * s.omega.z() -
                      yaw_stiffness(p, params.aero, Vc) * beta;

        // Control surfaces.
        const Eigen::Vector3d g = alloc.surface_gains(Vc);
        moment.x() += g(0) * eff[kAileron];
        moment.y() += g(1) * eff[kElevator];
        moment.z() += g(2) * eff[kRudder];
    }

    const Eigen::Vector3d J(p.Jx, p.Jy, p.Jz);

    Derivatives d;
    d.pos_dot = s.quat * s.vel;
    d.vel_dot = force / p.mass - s.omega.cross(s.vel);
    d.omega_dot = (moment - s.omega.cross(J.cwiseProduct(s.omega))).cwiseQuotient(J);
    const Eigen::Vector3d& w = s.omega;
    const Eigen::Quaterniond& q = s.quat;
    d.quat_dot = 0.5 * Eigen::Vector4d(
                           -q.x() * w.x() - q.y() * w.y() - q.z() * w.z(),
                           q.w() * w.x() + q.y() * w.z() - q.z() * w.y(),
                           q.w() * w.y() - q.x() * w.z() + q.z() * w.x(),
                           q.w() * w.z() + q.x() * w.y() - q.y() * w.x());
    return d;
}

RigidBodyState advance(const RigidBodyState& s, const Derivatives& d, double h) {
    RigidBodyState out = s;
    out.pos += h * d.pos_dot;
    out.vel += h * d.vel_dot;
    out.omega += h * d.omega_dot;
    out.quat.w() += h * d.quat_dot(0);
    out.quat.x() += h * d.quat_dot(1);
    out.quat.y() += h * d.quat_dot(2);
    out.quat.z() += h * d.quat_dot(3);
    return out;
}

}  // namespace

void step(RigidBodyState& state, ActuatorState& act, const ActuatorVector& commands,
          const ActuatorVector& loss, const SimParams& params, const Allocator& alloc, double dt) {
    if (dt <= 0.0 || dt > 5e-3) throw SimError("step: dt must be in (0, 5 ms]");

    // Actuator lag has an exact solution over the step; sample it at the RK4
    // stage times.
    auto lag_at = [&](double tau) {
        ActuatorVector out;
        const double decay = std::exp(-params.actuator_bandwidth * tau);
        for (int i = 0; i < kNumActuators; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            out[k] = commands[k] + (act.lag[k] - commands[k]) * decay;
            out[k] *= 1.0 - loss[k];
        }
        return out;
    };

    const ActuatorVector e0 = lag_at(0.0);
    const ActuatorVector e1 = lag_at(0.5 * dt);
    const ActuatorVector e2 = lag_at(dt);

    const Derivatives k1 = dynamics(state, e0, params, alloc);
    const Derivatives k2 = dynamics(advance(state, k1, 0.5 * dt), e1, params, alloc);
    const Derivatives k3 = dynamics(advance(state, k2, 0.5 * dt), e1, params, alloc);
    const Derivatives k4 = dynamics(advance(state, k3, dt), e2, params, alloc);

    state.pos += dt / 6.0 * (k1.pos_dot + 2.0 * k2.pos_dot + 2.0 * k3.pos_dot + k4.pos_dot);
    state.vel += dt / 6.0 * (k1.vel_dot + 2.0 * k2.vel_dot + 2.0 * k3.vel_dot + k4.vel_dot);
    state.omega += dt / 6.0 * (k1.omega_dot + 2.0 * k2.omega_dot + 2.0 * k3.omega_dot + k4.omega_dot);
    const Eigen::Vector4d dq = dt / 6.0 * (k1.quat_dot + 2.0 * k2.quat_dot + 2.0 * k3.quat_dot + k4.quat_dot);
    state.quat.w() += dq(0);
    state.quat.x() += dq(1);
    state.quat.y() += dq(2);
    state.quat.z() += dq(3);
    state.quat.normalize();

    const double decay = std::exp(-params.actuator_bandwidth * dt);
    for (int i = 0; i < kNumActuators; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        act.lag[k] = commands[k] + (act.lag[k] - commands[k]) * decay;
    }

    if (!state.finite()) throw NonFiniteState("step: state became non-finite");
}

const char* variant_name(ControllerVariant v) {
    switch (v) {
        case ControllerVariant::LQR: return "lqr";
        case ControllerVariant::SHIF: return "shif";
        default: return "gs_shif";
    }
}

ControllerVariant variant_from_name(const std::string& name) {
    if (name == "lqr") return ControllerVariant::LQR;
    if (name == "shif") return ControllerVariant::SHIF;
    if (name == "gs_shif") return ControllerVariant::GS_SHIF;
    throw SimError("unknown controller variant: " + name);
}

CascadedGains ControllerSet::gains_for(Axis axis, double V) const {
    const std::size_t i = static_cast<std::size_t>(axis);
    switch (variant) {
        case ControllerVariant::GS_SHIF: return schedule.gains_at(axis, V);
        case ControllerVariant::SHIF: return fixed[i];
        default: {
            const Eigen::RowVector3d& k = lqr[i];
            return {k(0), k(1), k(2), 0.0, 1.0};  // recorded for the log only
        }
    }
}

ControllerSet make_controller_set(ControllerVariant variant, const GainSchedule& schedule,
                                  const AircraftParameters& p,
                                  const std::array<double, 3>& moment_limit) {
    ControllerSet cs;
    cs.variant = variant;
    cs.schedule = schedule;
    cs.moment_limit = moment_limit;
    // SHIF baseline: fixed gains from the mid-envelope design point (V = 7 m/s).
    for (int a = 0; a < 3; ++a)
        cs.fixed[static_cast<std::size_t>(a)] = schedule.gains_at(static_cast<Axis>(a), 7.0);
    // LQR baseline on the hover integrator chain [int(e), e, rate] per axis.
    const double J[3] = {p.Jx, p.Jy, p.Jz};
    for (int a = 0; a < 3; ++a) {
        Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
        A(0, 1) = 1.0;
        A(1, 2) = 1.0;
        Eigen::Vector3d B(0.0, 0.0, 1.0 / J[a]);
        // Heavy weights on the integral and angle states: the baseline has
        // to reject sizeable trim moments without scheduling help.
        const Eigen::Matrix3d Q = Eigen::Vector3d(100.0, 100.0, 1.0).asDiagonal();
        Eigen::MatrixXd R(1, 1);
        R(0, 0) = 0.5;
        cs.lqr[static_cast<std::size_t>(a)] = lqr_design(A, B, Q, R);
    }
    return cs;
}

constexpr double kWingShare = 1.0;

double pitch_trim_reference(const SimParams& params, const SimConfig& config, double V) {
    const AircraftParameters& p = params.aircraft;
    const double q_stall = 0.5 * p.rho * kStallSpeed * kStallSpeed;
    const double qbar = 0.5 * p.rho * V * V;
    const double share = std::clamp(qbar / q_stall, 0.0, 1.0);
    const double Vc = std::min(V, params.aero.breakpoints.back());
    // Incidence that makes the wing carry most of the weight at the current
    // speed (never below the stall dynamic pressure). Ramping toward it with
    // dynamic pressure hands the weight over to the wing by the end of the
    // transition; the remaining share is kept on the collective as a
    // two-sided control reserve, so lift fluctuations stay inside the range
    // the (non-negative) collective can compensate.
    const double CL_req = kWingShare * p.mass * kGravity / (std::max(qbar, q_stall) * p.S);
    const double alpha_bal = (CL_req - params.aero.interp(params.aero.C_L0, Vc)) /
                             params.aero.interp(params.aero.C_La, Vc);
    return share * std::clamp(alpha_bal, 0.0, config.pitch_trim_cap);
}

namespace {

// Altitude PID from pole placement on the thrust-to-altitude chain:
// (s + 1.2)(s^2 + 2s + 1.25).
constexpr double kAltKp = 3.65;
constexpr double kAltKi = 2.2;
constexpr double kAltKd = 3.2;

// Incidence-relief path: once the wing carries the weight the collective
// bottoms out at zero, so commanded vertical acceleration is converted into
// an incidence increment instead. The integral term keeps enough gain for an
// exact steady trim; the P/D terms are attenuated harder so the
// altitude-pitch loop stays well damped even for the least-damped (baseline)
// attitude controller.
constexpr double kReliefIntGain = 0.4;
constexpr double kReliefPdGain = 0.2;

struct AxisState {
    double integ = 0.0;     // inner-loop rate-error integral (P-PID)
    double deriv_lp = 0.0;  // derivative filter state
    double lqi_int = 0.0;   // angle-error integral (LQR variant)
};

double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

}  // namespace

SimLog run_scenario(const FaultScenario& scenario, const ControllerSet& controllers,
                    const SimParams& params, const SimConfig& config) {
    const AircraftParameters& p = params.aircraft;
    const Allocator alloc(p, params.aero);
    const double weight = p.mass * kGravity;
    const ActuatorCommand trim = alloc.hover_trim(weight);

    RigidBodyState state;
    state.pos = Eigen::Vector3d(0.0, 0.0, -config.h_ref);
    ActuatorState act = ActuatorState::at(to_vector(trim));

    double alt_integ = 0.0;
    std::array<AxisState, 3> axes{};

    SimLog log;
    log.sample_dt = 1.0 / config.log_hz;
    const long steps_per_sample = std::lround(1.0 / (config.log_hz * config.dt));

    const long nsteps = std::lround(config.duration / config.dt);
    double t_stall = -1.0;
    double latch_throttle = 0.0;

    for (long k = 0; k <= nsteps; ++k) {
        const double t = static_cast<double>(k) * config.dt;
        const double V = state.airspeed();
        // Scheduling, the pitch-trim reference and the stall latch follow the
        // forward (pitot) speed; lateral excursions during an upset must not
        // be mistaken for transition progress.
        const double Vf = std::max(state.vel.x(), 0.0);
        const Eigen::Vector3d euler = state.euler_zyx();

        int mode = 0;
        if (t >= config.transition_start) mode = 1;
        if (t_stall >= 0.0) mode = 2;

        // References.
        const double phi_ref = 0.0, psi_ref = 0.0;
        const double theta_trim = mode == 0 ? 0.0 : pitch_trim_reference(params, config, Vf);

        // Altitude loop -> total vertical thrust.
        const double h = -state.pos.z();
        const double h_err = config.h_ref - h;
        const double h_dot = -(state.quat * state.vel).z();
        const double a_cmd = kAltKp * h_err + kAltKi * alt_integ - kAltKd * h_dot;

        // As the wing takes over the weight, altitude authority migrates from
        // the collective (which bottoms out at zero once lift covers the
        // weight) to the pitch incidence: convert the commanded acceleration
        // into the incidence increment that produces it.
        const double qbar_f = 0.5 * p.rho * Vf * Vf;
        const double q_stall = 0.5 * p.rho * kStallSpeed * kStallSpeed;
        const double share_f = std::clamp(qbar_f / q_stall, 0.0, 1.0);
        const double Vcf = std::min(Vf, params.aero.breakpoints.back());
        const double lift_slope =
            std::max(qbar_f * p.S * params.aero.interp(params.aero.C_La, Vcf), 50.0);
        const double a_cmd_pd = a_cmd - kAltKi * alt_integ;
        const double a_relief = kReliefIntGain * kAltKi * alt_integ + kReliefPdGain * a_cmd_pd;
        const double theta_relief =
            std::clamp(share_f * share_f * p.mass * a_relief / lift_slope, -0.15, 0.15);
        const double theta_ref = theta_trim + theta_relief;

        const double tilt = std::max(std::cos(euler(0)) * std::cos(euler(1)), 0.5);
        // Feed the modeled wing lift forward so the loop only has to reject
        // the (small) model error while lift ramps up during transition. Use
        // the flow angle of attack, not the pitch angle: during an upset the
        // two diverge and a pitch-based estimate would drive the collective
        // into saturation.
        const double Vc = std::min(V, params.aero.breakpoints.back());
        const double alpha_ff = std::atan2(state.vel.z(), std::max(state.vel.x(), 0.1));
        const double lift_ff = 0.5 * p.rho * V * V * p.S *
                               (params.aero.interp(params.aero.C_L0, Vc) +
                                params.aero.interp(params.aero.C_La, Vc) * alpha_ff);
        double thrust_cmd = p.mass * (kGravity + a_cmd) / tilt - lift_ff;
        const double thrust_max = 8.0 * p.rotor_thrust;
        const bool thrust_sat = thrust_cmd <= 0.0 || thrust_cmd >= thrust_max;
        thrust_cmd = std::clamp(thrust_cmd, 0.0, thrust_max);
        // Conditional integration: hold the integral only when neither the
        // collective nor the incidence-relief path can act on it. Once the
        // wing carries the weight the collective pins at zero, so the relief
        // path must keep the integrator alive or altitude trim is lost.
        const bool relief_sat = std::abs(theta_relief) >= 0.15 - 1e-12;
        if (!thrust_sat || (share_f > 0.9 && !relief_sat)) alt_integ += config.dt * h_err;

        // Attitude loops -> body moments.
        const double refs[3] = {phi_ref, theta_ref, psi_ref};
        double tau[3];
        for (int a = 0; a < 3; ++a) {
            const std::size_t ia = static_cast<std::size_t>(a);
            const double err = a == 2 ? wrap_angle(refs[a] - euler(a)) : refs[a] - euler(a);
            const double rate = state.omega(a);
            const double limit = controllers.moment_limit[ia];
            AxisState& ax = axes[ia];
            if (controllers.variant == ControllerVariant::LQR) {
                const Eigen::RowVector3d& K = controllers.lqr[ia];
                double u = -(K(0) * ax.lqi_int + K(1) * (-err) + K(2) * rate);
                const bool sat = std::abs(u) >= limit;
                if (!sat) ax.lqi_int += config.dt * (-err);
                tau[a] = std::clamp(u, -limit, limit);
            } else {
                const CascadedGains g = controllers.gains_for(static_cast<Axis>(a), Vf);
                const double rate_cmd = g.kp_outer * err;
                const double e_rate = rate_cmd - rate;
                const double deriv = (e_rate - ax.deriv_lp) / g.tau_f;
                ax.deriv_lp += config.dt * deriv;
                double u = g.kp * e_rate + g.ki * ax.integ + g.kd * deriv;
                const bool sat = std::abs(u) >= limit;
                if (!sat) ax.integ += config.dt * e_rate;
                tau[a] = std::clamp(u, -limit, limit);
            }
        }

        // Allocation (fault-unaware) plus the open-loop transition ramp.
        ActuatorCommand cmd = alloc.allocate({thrust_cmd, tau[0], tau[1], tau[2]}, V, trim);
        double hrotor_cmd = 0.0;
        if (mode == 2) {
            // Fixed-wing entry: blend the forward throttle smoothly from its
            // value at the stall latch down to the drag-trim value, so the
            // settling window is flown near the design speed instead of
            // accelerating out of the envelope.
            const double CL = params.aero.interp(params.aero.C_L0, Vc) +
                              params.aero.interp(params.aero.C_La, Vc) * theta_ref;
            const double CD = params.aero.interp(params.aero.C_D0, Vc) +
                              params.aero.interp(params.aero.k_ind, Vc) * CL * CL;
            const double qbar_s = 0.5 * p.rho * kStallSpeed * kStallSpeed;
            const double drag_ff = qbar_s * p.S * CD / (2.0 * p.hrotor_thrust);
            const double blend = std::exp(-(t - t_stall) / 1.0);
            hrotor_cmd = drag_ff + (latch_throttle - drag_ff) * blend;
        } else if (mode == 1) {
            hrotor_cmd = config.cruise_throttle *
                         std::min((t - config.transition_start) / config.ramp_duration, 1.0);
        }
        cmd.hrotor = {hrotor_cmd, hrotor_cmd};
        cmd.clamp();

        const ActuatorVector cmd_vec = to_vector(cmd);
        const ActuatorVector loss_now =
            t >= scenario.onset ? scenario.loss : ActuatorVector{};

        if (k % steps_per_sample == 0) {
            SimRecord rec;
            rec.t = t;
            rec.state = state;
            rec.V = V;
            rec.phi = euler(0);
            rec.theta = euler(1);
            rec.psi = euler(2);
            rec.h_ref = config.h_ref;
            rec.phi_ref = phi_ref;
            rec.theta_ref = theta_ref;
            rec.psi_ref = psi_ref;
            rec.cmd = cmd_vec;
            rec.eff = apply_fault(scenario, t, act.lag);
            rec.mode = mode;
            rec.active_roll_gains = controllers.gains_for(Axis::Roll, Vf);
            log.records.push_back(rec);
        }

        if (t_stall < 0.0 && Vf >= kStallSpeed) {
            t_stall = t;
            latch_throttle = hrotor_cmd;
        }
        if (t_stall >= 0.0 && t >= t_stall + config.settle_time) break;

        step(state, act, cmd_vec, loss_now, params, alloc, config.dt);
    }

    if (t_stall < 0.0)
        throw TransitionTimeout("run_scenario: airspeed did not reach stall speed before the time cap");
    return log;
}

void SimLog::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw SimError("cannot write sim log: " + path);
    out << "t,x,y,z,u,v,w,q0,q1,q2,q3,p,q,r,V,phi,theta,psi,href,phiref,thetaref,psiref,"
           "rotor1a,rotor1b,rotor2a,rotor2b,rotor3a,rotor3b,rotor4a,rotor4b,ail,elev,rud,"
           "hrot1,hrot2,eff_rotor1a,eff_rotor1b,eff_rotor2a,eff_rotor2b,eff_rotor3a,eff_rotor3b,"
           "eff_rotor4a,eff_rotor4b,eff_ail,eff_elev,eff_rud,eff_hrot1,eff_hrot2,mode\n";
    char buf[2048];
    for (const SimRecord& r : records) {
        int n = std::snprintf(buf, sizeof(buf),
                              "%.4f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.12g,%.12g,%.12g,%.12g,"
                              "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g",
                              r.t, r.state.pos.x(), r.state.pos.y(), r.state.pos.z(),
                              r.state.vel.x(), r.state.vel.y(), r.state.vel.z(), r.state.quat.w(),
                              r.state.quat.x(), r.state.quat.y(), r.state.quat.z(), r.state.omega.x(),
                              r.state.omega.y(), r.state.omega.z(), r.V, r.phi, r.theta, r.psi,
                              r.h_ref, r.phi_ref, r.theta_ref, r.psi_ref);
        std::string line(buf, static_cast<std::size_t>(n));
        for (double v : r.cmd) {
            std::snprintf(buf, sizeof(buf), ",%.9g", v);
            line += buf;
        }
        for (double v : r.eff) {
            std::snprintf(buf, sizeof(buf), ",%.9g", v);
            line += buf;
        }
        line += "," + std::to_string(r.mode) + "\n";
        out << line;
    }
}

SimLog SimLog::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError("cannot read sim log: " + path);
    SimLog log;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        std::vector<double> v;
        v.reserve(49);
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t comma = line.find(',', pos);
            const std::string tok = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
            v.push_back(std::stod(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (v.size() != 49) throw SimError("sim log row has wrong column count: " + path);
        SimRecord r{};
        r.t = v[0];
        r.state.pos = {v[1], v[2], v[3]};
        r.state.vel = {v[4], v[5], v[6]};
        r.state.quat = Eigen::Quaterniond(v[7], v[8], v[9], v[10]);
        r.state.omega = {v[11], v[12], v[13]};
        r.V = v[14];
        r.phi = v[15];
        r.theta = v[16];
        r.psi = v[17];
        r.h_ref = v[18];
        r.phi_ref = v[19];
        r.theta_ref = v[20];
        r.psi_ref = v[21];
        for (int i = 0; i < kNumActuators; ++i) {
            r.cmd[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(22 + i)];
            r.eff[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(35 + i)];
        }
        r.mode = static_cast<int>(v[48]);
        log.records.push_back(r);
    }
    if (log.records.size() < 2) throw SimError("sim log too short: " + path);
    log.sample_dt = log.records[1].t - log.records[0].t;
    return log;
}

}  // namespace ftc
