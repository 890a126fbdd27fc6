#pragma once

#include "ftc/fixture.hpp"
#include "ftc/linsys.hpp"

#include <array>
#include <stdexcept>
#include <vector>

// Airspeed-dependent, fault-scaled attitude plants for the transition
// envelope [0, 13] m/s, plus the aircraft/aero parameter fixtures.

namespace ftc {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfEnvelope : ModelError {
    using ModelError::ModelError;
};

enum class Axis { Roll, Pitch, Yaw };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::Roll: return "roll";
        case Axis::Pitch: return "pitch";
        default: return "yaw";
    }
}

struct AircraftParameters {
    double mass;            // kg
    double Jx, Jy, Jz;      // kg m^2
    double S;               // wing area, m^2
    double b;               // wing span, m
    double c_bar;           // mean aerodynamic chord, m
    double rho = 1.225;     // kg/m^3
    double l1, l2, l3, l4;  // vertical-rotor lateral arms, m
    double l_r, l_f;        // rear/front longitudinal arms, m
    double rotor_thrust;    // N at full throttle, per vertical rotor
    double rotor_torque;    // N m drag torque at full throttle
    double hrotor_thrust;   // N at full throttle, per horizontal rotor

    static AircraftParameters from_fixture(const Fixture& f);
    void validate() const;
};

struct AeroCoefficientTable {
    std::vector<double> breakpoints;  // airspeeds, m/s, spanning [0, 13]
    std::vector<double> C_lp, C_mq, C_Malpha, C_nr, C_Nbeta;
    // Lift/drag parameterization for the simulator: C_L = C_L0 + C_La*alpha,
    // C_D = C_D0 + k_ind*C_L^2, each coefficient tabulated over breakpoints.
    std::vector<double> C_L0, C_La, C_D0, k_ind;
    // Control-surface moment derivatives (per rad).
    double C_l_da, C_m_de, C_n_dr;

    static AeroCoefficientTable from_fixture(const Fixture& f);
    void validate() const;

    double interp(const std::vector<double>& table, double V) const;
};

struct FaultState {
    double gamma_T = 0.0, gamma_L = 0.0, gamma_M = 0.0, gamma_N = 0.0;
};

struct DesignPoint {
    int index;       // 1..6
    double V_bar;    // m/s
    double V_min, V_max;
    double gamma_lo = 0.0, gamma_hi = 0.6;
};

inline constexpr double kStallSpeed = 13.0;   // m/s
inline constexpr double kGammaMax = 0.6;

// Moment derivatives in their V-cancelled forms (finite at V = 0).
double roll_damping(const AircraftParameters& p, const AeroCoefficientTable& a, double V);    // M_x^p
double pitch_damping(const AircraftParameters& p, const AeroCoefficientTable& a, double V);   // M_y^q
double pitch_stiffness(const AircraftParameters& p, const AeroCoefficientTable& a, double V); // M_y^alpha
double yaw_damping(const AircraftParameters& p, const AeroCoefficientTable& a, double V);     // M_z^r
double yaw_stiffness(const AircraftParameters& p, const AeroCoefficientTable& a, double V);   // M_z^beta

RationalTF roll_tf(const AircraftParameters& p, const AeroCoefficientTable& a, double V, double gamma_L);
RationalTF pitch_tf(const AircraftParameters& p, const AeroCoefficientTable& a, double V, double gamma_M);
RationalTF yaw_tf(const AircraftParameters& p, const AeroCoefficientTable& a, double V, double gamma);

RationalTF plant_tf(Axis axis, const AircraftParameters& p, const AeroCoefficientTable& a, double V,
                    double gamma);

std::array<DesignPoint, 6> design_points();

}  // namespace ftc
