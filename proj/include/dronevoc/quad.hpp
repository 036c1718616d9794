#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <array>

namespace dronevoc {

// X configuration, body frame x forward / y left / z up.
// Rotor layout (arm projections d = arm_length/sqrt(2)):
//   0: (+d, -d)   1: (-d, +d)   2: (+d, +d)   3: (-d, -d)
// Opposing rotors spin in the same direction: pairs {0,1} and {2,3}.
struct QuadParams {
    double mass = 0.032;                                    // kg
    Eigen::Vector3d inertia_diag{1.66e-5, 1.66e-5, 2.93e-5};  // kg m^2
    double arm_length = 0.046;                              // m
    double k_f = 2.25e-8;                                   // N/(rad/s)^2
    double k_tau = 1.3e-10;                                 // N m/(rad/s)^2
    double omega_min = 450.0;                               // rad/s idle floor
    double omega_max = 2600.0;                              // rad/s
    double tau_up = 0.03;                                   // s, spin-up lag
    double tau_down = 0.08;                                 // s, spin-down lag
    std::array<int, 4> spin_dirs{+1, +1, -1, -1};           // sign of yaw-torque contribution
    double gravity = 9.81;                                  // m/s^2

    void validate() const;  // throws ValidationError
};

struct QuadState {
    Eigen::Vector3d position{0.0, 0.0, 0.0};
    Eigen::Vector3d velocity{0.0, 0.0, 0.0};
    Eigen::Quaterniond orientation{1.0, 0.0, 0.0, 0.0};  // body -> world
    Eigen::Vector3d body_rates{0.0, 0.0, 0.0};           // body frame, rad/s
    Eigen::Vector4d rotor_speeds{0.0, 0.0, 0.0, 0.0};    // rad/s

    double yaw() const;  // ZYX yaw of orientation
};

struct MotorCommand {
    Eigen::Vector4d speeds{0.0, 0.0, 0.0, 0.0};  // rad/s, clamped on application
};

struct Wrench {
    double thrust = 0.0;           // N along body z
    Eigen::Vector3d torque{0.0, 0.0, 0.0};  // N m body frame
};

// sqrt(m g / (4 k_f)): equilibrium speed where rotor thrust balances weight.
double hover_speed(const QuadParams& params);

// One exact first-order-lag step toward `commanded`; tau_up when speeding up,
// tau_down when slowing down; result clamped to [omega_min, omega_max].
double motor_step(double current, double commanded, double dt, const QuadParams& params);

Wrench wrench(const Eigen::Vector4d& rotor_speeds, const QuadParams& params);

// Advance motors (exact lag step), then integrate the rigid body with RK4
// holding the new wrench constant over dt. Quaternion renormalized.
QuadState step(const QuadState& state, const MotorCommand& cmd, double dt, const QuadParams& params);

// Level equilibrium state: all rotors at hover_speed, zero rates.
QuadState hover_state(const QuadParams& params, const Eigen::Vector3d& position, double yaw);

}  // namespace dronevoc
