#include "dronevoc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dronevoc/angles.hpp"
#include "dronevoc/errors.hpp"

namespace dronevoc {

void ControllerGains::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (kp_pos[i] < 0.0 || kd_pos[i] < 0.0 || kp_att[i] < 0.0 || kd_att[i] < 0.0) {
            throw ValidationError("controller gains must be non-negative");
        }
    }
    if (!(yaw_torque_limit > 0.0)) {
        throw ValidationError("yaw_torque_limit must be positive");
    }
}

MixResult mix(const QuadParams& params, double thrust, const Eigen::Vector3d& torque) {
    const double d = params.arm_length / std::numbers::sqrt2;
    const double a = thrust / (4.0 * params.k_f);
    const double b = torque.x() / (4.0 * params.k_f * d);
    const double c = torque.y() / (4.0 * params.k_f * d);
    const double e = torque.z() / (4.0 * params.k_tau);
    std::array<double, 4> sq{a - b - c + e, a + b + c + e, a + b - c - e, a - b + c - e};
    const double lo = params.omega_min * params.omega_min;
    const double hi = params.omega_max * params.omega_max;
    MixResult out;
    for (int i = 0; i < 4; ++i) {
        double u = sq[i];
        if (u < lo) {
            u = lo;
            ++out.clamped;
        } else if (u > hi) {
            u = hi;
            ++out.clamped;
        }
        out.speeds[i] = std::sqrt(u);
    }
    return out;
}

ControlCommand control_step(const ControllerGains& gains, const QuadParams& params,
                            ControlState& state, const PoseSample& raw,
                            const Setpoint& sp, double dt) {
    if (dt <= 0.0) throw ValidationError("control time step must be positive");
    const PoseSample est = smooth(state.smoother, raw, dt);

    if (state.have_prev) {
        state.vel_est = (est.position - state.prev.position) / dt;
        state.rate_est = Eigen::Vector3d(angle_diff(est.roll, state.prev.roll),
                                         angle_diff(est.pitch, state.prev.pitch),
                                         angle_diff(est.yaw, state.prev.yaw)) /
                         dt;
    } else {
        state.vel_est.setZero();
        state.rate_est.setZero();
        state.have_prev = true;
    }
    state.prev = est;

    // Position loop: desired inertial acceleration including gravity.
    Eigen::Vector3d a_des = gains.kp_pos.cwiseProduct(sp.position - est.position) +
                            gains.kd_pos.cwiseProduct(sp.velocity - state.vel_est);
    a_des.z() += params.gravity;

    const Eigen::AngleAxisd roll_rot(est.roll, Eigen::Vector3d::UnitX());
    const Eigen::AngleAxisd pitch_rot(est.pitch, Eigen::Vector3d::UnitY());
    const Eigen::AngleAxisd yaw_rot(est.yaw, Eigen::Vector3d::UnitZ());
    const Eigen::Matrix3d r_est = (yaw_rot * pitch_rot * roll_rot).toRotationMatrix();

    const double thrust = params.mass * a_des.dot(r_est.col(2));

    // Attitude loop: align body z with the desired acceleration direction.
    Eigen::Vector3d z_des = a_des;
    const double norm = z_des.norm();
    if (norm < 1e-9) {
        z_des = Eigen::Vector3d::UnitZ();
    } else {
        z_des /= norm;
    }
    const Eigen::Vector3d z_des_body = r_est.transpose() * z_des;
    Eigen::Vector3d e_att(-z_des_body.y(), z_des_body.x(), angle_diff(sp.yaw, est.yaw));

    const Eigen::Vector3d rate_ff(0.0, 0.0, sp.yaw_rate);
    const Eigen::Vector3d ang_acc = gains.kp_att.cwiseProduct(e_att) -
                                    gains.kd_att.cwiseProduct(state.rate_est - rate_ff);
    Eigen::Vector3d torque = params.inertia_diag.cwiseProduct(ang_acc);
    // Soft saturation: keeps a nonzero small-signal slope even when a strong
    // oscillatory demand holds the axis near the limit, so slow yaw errors
    // still drain away instead of freezing into a drift.
    torque.z() = gains.yaw_torque_limit * std::tanh(torque.z() / gains.yaw_torque_limit);

    const MixResult mixed = mix(params, thrust, torque);
    state.clamp_events += mixed.clamped;

    ControlCommand cmd;
    cmd.motor_cmd = mixed.speeds;
    cmd.thrust = thrust;
    cmd.torque = torque;
    cmd.smoothed = est;
    return cmd;
}

}  // namespace dronevoc
