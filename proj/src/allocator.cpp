#include "ftc/allocator.hpp"

#include <algorithm>
#include <cmath>

namespace ftc {

void ActuatorCommand::clamp() {
    for (double& u : rotor) u = std::clamp(u, 0.0, 1.0);
    aileron = std::clamp(aileron, -kSurfaceLimit, kSurfaceLimit);
    elevator = std::clamp(elevator, -kSurfaceLimit, kSurfaceLimit);
    rudder = std::clamp(rudder, -kSurfaceLimit, kSurfaceLimit);
    for (double& u : hrotor) u = std::clamp(u, 0.0, 1.0);
}

Allocator::Allocator(const AircraftParameters& p, const AeroCoefficientTable& a)
    : params_(p), aero_(a) {
    // Rotor layout: front row at x = +l_f, rear row at x = -l_r; lateral
    // offsets +-l1 (inner) and +-l2 (outer). Spin directions alternate per
    // position pair so yaw reaction decouples from thrust and roll/pitch.
    const double x[8] = {p.l_f, p.l_f, p.l_f, p.l_f, -p.l_r, -p.l_r, -p.l_r, -p.l_r};
    const double y[8] = {-p.l2, -p.l1, p.l1, p.l2, p.l2, p.l1, -p.l1, -p.l2};
    const double d[8] = {+1, -1, -1, +1, +1, -1, -1, +1};
    for (int i = 0; i < 8; ++i) {
        B_(0, i) = p.rotor_thrust;            // T
        B_(1, i) = -y[i] * p.rotor_thrust;    // Mx
        B_(2, i) = x[i] * p.rotor_thrust;     // My
        B_(3, i) = d[i] * p.rotor_torque;     // Mz
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B_);
    if (lu.rank() != 4) throw AllocatorError("rotor effectiveness matrix is rank deficient");
    q_stall_ = 0.5 * p.rho * kStallSpeed * kStallSpeed;
}

Eigen::Vector3d Allocator::surface_gains(double V) const {
    const double q = 0.5 * params_.rho * V * V;
    return {q * params_.S * params_.b * aero_.C_l_da, q * params_.S * params_.c_bar * aero_.C_m_de,
            q * params_.S * params_.b * aero_.C_n_dr};
}

double Allocator::surface_share(double V) const {
    const double q = 0.5 * params_.rho * V * V;
    return std::clamp(q / q_stall_, 0.0, 1.0);
}

ActuatorCommand Allocator::hover_trim(double weight) const {
    ActuatorCommand c;
    c.rotor.fill(weight / (8.0 * params_.rotor_thrust));
    return c;
}

ActuatorCommand Allocator::allocate(const Wrench& wrench, double V, const ActuatorCommand& trim) const {
    ActuatorCommand out = trim;

    // Split the moment demand: surfaces take q_bar/q_stall of it, rotors the rest.
    const double share = surface_share(V);
    const Eigen::Vector3d gains = surface_gains(V);
    Eigen::Vector3d m_demand(wrench.Mx, wrench.My, wrench.Mz);
    Eigen::Vector3d m_surface = Eigen::Vector3d::Zero();
    double defl[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        if (share > 0.0 && std::abs(gains(i)) > 1e-9) {
            defl[i] = std::clamp(share * m_demand(i) / gains(i), -kSurfaceLimit, kSurfaceLimit);
            m_surface(i) = gains(i) * defl[i];
        }
    }
    out.aileron = defl[0];
    out.elevator = defl[1];
    out.rudder = defl[2];

    Eigen::Vector4d w_rotor(wrench.T, m_demand(0) - m_surface(0), m_demand(1) - m_surface(1),
                            m_demand(2) - m_surface(2));

    const Eigen::Map<const Eigen::Matrix<double, 8, 1>> u_trim(trim.rotor.data());
    const Eigen::Vector4d delta_w = w_rotor - B_ * u_trim;

    // Equal-authority rotors: the weighted pseudo-inverse reduces to B^T (B B^T)^-1.
    const Eigen::Matrix4d BBt = B_ * B_.transpose();
    Eigen::Matrix<double, 8, 1> u = u_trim + B_.transpose() * BBt.ldlt().solve(delta_w);

    // Clamp and run one redistribution pass over the unsaturated set.
    Eigen::Matrix<double, 8, 1> u_cl = u.cwiseMax(0.0).cwiseMin(1.0);
    if ((u_cl - u).cwiseAbs().maxCoeff() > 0.0) {
        std::vector<int> free_idx;
        for (int i = 0; i < 8; ++i)
            if (u(i) > 0.0 && u(i) < 1.0) free_idx.push_back(i);
        if (!free_idx.empty()) {
            const Eigen::Vector4d resid = w_rotor - B_ * u_cl;
            Eigen::MatrixXd Bf(4, static_cast<long>(free_idx.size()));
            for (std::size_t j = 0; j < free_idx.size(); ++j) Bf.col(static_cast<long>(j)) = B_.col(free_idx[j]);
            const Eigen::VectorXd du =
                Bf.transpose() *
                (Bf * Bf.transpose()).completeOrthogonalDecomposition().pseudoInverse() * resid;
            for (std::size_t j = 0; j < free_idx.size(); ++j)
                u_cl(free_idx[j]) = std::clamp(u_cl(free_idx[j]) + du(static_cast<long>(j)), 0.0, 1.0);
        }
    }
    for (int i = 0; i < 8; ++i) out.rotor[static_cast<std::size_t>(i)] = u_cl(i);
    out.clamp();
    return out;
}

}  // namespace ftc
