#pragma once

#include <array>

#include <Eigen/Dense>

#include "dronevoc/pose.hpp"
#include "dronevoc/quad.hpp"

namespace dronevoc {

// Cascaded position/attitude controller running at the pose rate (100 Hz).
// Position PD on smoothed pose plus gravity produces a desired acceleration;
// its direction sets the tilt target, its projection on the body z axis sets
// collective thrust.  Attitude P on angle error and D on finite-difference
// body rates (with yaw-rate feedforward) produces torque, scaled by inertia
// so the gains are in angular-acceleration units.  Yaw torque passes through
// a soft saturation at yaw_torque_limit so yaw demand cannot starve roll,
// pitch, or thrust of rotor authority; demands past the limit rail rather
// than track.
struct ControllerGains {
    Eigen::Vector3d kp_pos{4.0, 4.0, 9.0};  // 1/s^2
    Eigen::Vector3d kd_pos{4.0, 4.0, 5.0};  // 1/s
    Eigen::Vector3d kp_att{44.0, 44.0, 2.0};  // 1/s^2
    Eigen::Vector3d kd_att{11.0, 11.0, 4.0};  // 1/s
    double yaw_torque_limit = 9e-4;           // N*m

    void validate() const;
};

struct Setpoint {
    Eigen::Vector3d position{0.0, 0.0, 0.0};
    Eigen::Vector3d velocity{0.0, 0.0, 0.0};
    double yaw = 0.0;
    double yaw_rate = 0.0;
};

struct MixResult {
    std::array<double, 4> speeds{};  // rad/s, per rotor
    int clamped = 0;                 // rotors clamped to a squared-speed bound
};

// Exact inverse of the rotor-to-wrench map, clamped to achievable
// squared speeds.  mix(wrench(w)) == w whenever w is within bounds.
MixResult mix(const QuadParams& params, double thrust, const Eigen::Vector3d& torque);

struct ControlState {
    SmootherState smoother;
    bool have_prev = false;
    PoseSample prev;
    Eigen::Vector3d vel_est{0.0, 0.0, 0.0};
    Eigen::Vector3d rate_est{0.0, 0.0, 0.0};
    long clamp_events = 0;  // cumulative rotors clamped across all ticks
};

struct ControlCommand {
    std::array<double, 4> motor_cmd{};  // rad/s
    double thrust = 0.0;                // N, pre-mix
    Eigen::Vector3d torque{0.0, 0.0, 0.0};  // N*m, pre-mix
    PoseSample smoothed;                // estimator output used this tick
};

// One control tick: smooth the raw pose, update finite-difference velocity
// and rate estimates, run both loops, mix to rotor speed commands.
ControlCommand control_step(const ControllerGains& gains, const QuadParams& params,
                            ControlState& state, const PoseSample& raw,
                            const Setpoint& sp, double dt);

}  // namespace dronevoc
