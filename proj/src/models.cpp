#include "ftc/models.hpp"

#include <algorithm>
#include <cmath>

namespace ftc {

AircraftParameters AircraftParameters::from_fixture(const Fixture& f) {
    AircraftParameters p;
    p.mass = f.scalar("aircraft.mass");
    p.Jx = f.scalar("aircraft.Jx");
    p.Jy = f.scalar("aircraft.Jy");
    p.Jz = f.scalar("aircraft.Jz");
    p.S = f.scalar("aircraft.S");
    p.b = f.scalar("aircraft.b");
    p.c_bar = f.scalar("aircraft.c_bar");
    p.rho = f.scalar_or("aircraft.rho", 1.225);
    p.l1 = f.scalar("aircraft.l1");
    p.l2 = f.scalar("aircraft.l2");
    p.l3 = f.scalar("aircraft.l3");
    p.l4 = f.scalar("aircraft.l4");
    p.l_r = f.scalar("aircraft.l_r");
    p.l_f = f.scalar("aircraft.l_f");
    p.rotor_thrust = f.scalar("aircraft.rotor_thrust");
    p.rotor_torque = f.scalar("aircraft.rotor_torque");
    p.hrotor_thrust = f.scalar("aircraft.hrotor_thrust");
    p.validate();
    return p;
}

void AircraftParameters::validate() const {
    const double vals[] = {mass, Jx, Jy, Jz, S, b, c_bar, rho, l1, l2, l3, l4,
                           l_r, l_f, rotor_thrust, rotor_torque, hrotor_thrust};
    for (double v : vals)
        if (!(v > 0.0) || !std::isfinite(v))
            throw ModelError("AircraftParameters: all parameters must be strictly positive");
}

AeroCoefficientTable AeroCoefficientTable::from_fixture(const Fixture& f) {
    AeroCoefficientTable t;
    t.breakpoints = f.list("aero.breakpoints");
    t.C_lp = f.list("aero.C_lp");
    t.C_mq = f.list("aero.C_mq");
    t.C_Malpha = f.list("aero.C_Malpha");
    t.C_nr = f.list("aero.C_nr");
    t.C_Nbeta = f.list("aero.C_Nbeta");
    t.C_L0 = f.list("aero.C_L0");
    t.C_La = f.list("aero.C_La");
    t.C_D0 = f.list("aero.C_D0");
    t.k_ind = f.list("aero.k_ind");
    t.C_l_da = f.scalar("aero.C_l_da");
    t.C_m_de = f.scalar("aero.C_m_de");
    t.C_n_dr = f.scalar("aero.C_n_dr");
    t.validate();
    return t;
}

void AeroCoefficientTable::validate() const {
    const std::size_t n = breakpoints.size();
    if (n < 2) throw ModelError("AeroCoefficientTable: need at least two breakpoints");
    for (std::size_t i = 1; i < n; ++i)
        if (breakpoints[i] <= breakpoints[i - 1])
            throw ModelError("AeroCoefficientTable: breakpoints must be strictly increasing");
    if (breakpoints.front() > 0.0 || breakpoints.back() < kStallSpeed)
        throw ModelError("AeroCoefficientTable: breakpoints must span [0, 13] m/s");
    for (const auto* tbl : {&C_lp, &C_mq, &C_Malpha, &C_nr, &C_Nbeta, &C_L0, &C_La, &C_D0, &k_ind})
        if (tbl->size() != n) throw ModelError("AeroCoefficientTable: table length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (C_lp[i] > 0.0 || C_mq[i] > 0.0 || C_nr[i] > 0.0)
            throw ModelError("AeroCoefficientTable: damping derivatives must be <= 0");
        if (C_Malpha[i] > 0.0)
            throw ModelError("AeroCoefficientTable: C_Malpha must be <= 0 (static pitch stability)");
    }
}

double AeroCoefficientTable::interp(const std::vector<double>& table, double V) const {
    if (V < breakpoints.front() || V > breakpoints.back())
        throw OutOfEnvelope("airspeed outside aero table span: " + std::to_string(V));
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), V);
    if (it == breakpoints.end()) return table.back();
    const std::size_t j = static_cast<std::size_t>(it - breakpoints.begin());
    if (j == 0) return table.front();
    const double t = (V - breakpoints[j - 1]) / (breakpoints[j] - breakpoints[j - 1]);
    return table[j - 1] + t * (table[j] - table[j - 1]);
}

// q_bar * S * b * C_lp * b/(2V) with the V^2/V cancellation applied, so the
// expression is exact (and zero) at V = 0.
double roll_damping(const AircraftParameters& p, const AeroCoefficientTable& a, double V) {
    return 0.25 * p.rho * V * p.S * p.b * p.b * a.interp(a.C_lp, V);
}

double pitch_damping(const AircraftParameters& p, const AeroCoefficientTable& a, double V) {
    return 0.25 * p.rho * V * p.S * p.c_bar * p.c_bar * a.interp(a.C_mq, V);
}

double pitch_stiffness(const AircraftParameters& p, const AeroCoefficientTable& a, double V) {
    return 0.5 * p.rho * V * V * p.S * p.c_bar * a.interp(a.C_Malpha, V);
}

double yaw_damping(const AircraftParameters& p, const AeroCoefficientTable& a, double V) {
    return 0.25 * p.rho * V * p.S * p.b * p.b * a.interp(a.C_nr, V);
}

double yaw_stiffness(const AircraftParameters& p, const AeroCoefficientTable& a, double V) {
    return -0.5 * p.rho * V * V * p.S * p.b * a.interp(a.C_Nbeta, V);
}

namespace {
void check_inputs(double V, double gamma) {
    if (V < 0.0 || V > kStallSpeed) throw OutOfEnvelope("airspeed outside [0, 13] m/s");
    if (gamma < 0.0 || gamma > kGammaMax) throw ModelError("loss fraction outside [0, 0.6]");
}
}  // namespace

RationalTF roll_tf(const AircraftParameters& p, const AeroCoefficientTable& a, double V, double gamma_L) {
    check_inputs(V, gamma_L);
    return RationalTF({1.0 - gamma_L}, {p.Jx, -roll_damping(p, a, V)});
}

RationalTF pitch_tf(const AircraftParameters& p, const AeroCoefficientTable& a, double V, double gamma_M) {
    check_inputs(V, gamma_M);
    return RationalTF({1.0 - gamma_M, 0.0},
                      {p.Jy, -pitch_damping(p, a, V), -pitch_stiffness(p, a, V)})
        .reduced();
}

RationalTF yaw_tf(const AircraftParameters& p, const AeroCoefficientTable& a, double V, double gamma) {
    check_inputs(V, gamma);
    return RationalTF({1.0 - gamma, 0.0}, {p.Jz, -yaw_damping(p, a, V), -yaw_stiffness(p, a, V)})
        .reduced();
}

RationalTF plant_tf(Axis axis, const AircraftParameters& p, const AeroCoefficientTable& a, double V,
                    double gamma) {
    switch (axis) {
        case Axis::Roll: return roll_tf(p, a, V, gamma);
        case Axis::Pitch: return pitch_tf(p, a, V, gamma);
        default: return yaw_tf(p, a, V, gamma);
    }
}

std::array<DesignPoint, 6> design_points() {
    return {{{1, 0.0, 0.0, 0.8},
             {2, 1.0, 0.8, 2.5},
             {3, 4.0, 2.5, 5.5},
             {4, 7.0, 5.5, 8.5},
             {5, 10.0, 8.5, 11.5},
             {6, 13.0, 11.5, 13.0}}};
}

}  // namespace ftc
