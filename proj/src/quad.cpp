#include "dronevoc/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

bool finite(const Eigen::Vector3d& v) { return v.allFinite(); }

struct Deriv {
    Eigen::Vector3d dp, dv;
    Eigen::Vector4d dq;  // quaternion coefficients (w, x, y, z)
    Eigen::Vector3d dw;
};

Eigen::Vector4d quat_coeffs(const Eigen::Quaterniond& q) {
    return {q.w(), q.x(), q.y(), q.z()};
}

Deriv dynamics(const Eigen::Vector3d& /*p*/, const Eigen::Vector3d& v, const Eigen::Vector4d& qc,
               const Eigen::Vector3d& w, const Wrench& u, const QuadParams& params) {
    Eigen::Quaterniond q(qc[0], qc[1], qc[2], qc[3]);
    q.normalize();

    Deriv d;
    d.dp = v;
    d.dv = q * Eigen::Vector3d(0.0, 0.0, u.thrust / params.mass) -
           Eigen::Vector3d(0.0, 0.0, params.gravity);

    // qdot = 0.5 * q (x) (0, w)
    Eigen::Quaterniond omega_q(0.0, w.x(), w.y(), w.z());
    Eigen::Quaterniond qdot = q * omega_q;
    d.dq = 0.5 * quat_coeffs(qdot);

    Eigen::Vector3d iw = params.inertia_diag.cwiseProduct(w);
    d.dw = (u.torque - w.cross(iw)).cwiseQuotient(params.inertia_diag);
    return d;
}

}  // namespace

void QuadParams::validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(mass)) throw ValidationError("quad.mass must be > 0");
    if (!(inertia_diag.array() > 0.0).all() || !inertia_diag.allFinite())
        throw ValidationError("quad.inertia_diag must be > 0");
    if (!positive(arm_length)) throw ValidationError("quad.arm_length must be > 0");
    if (!positive(k_f)) throw ValidationError("quad.k_f must be > 0");
    if (!positive(k_tau)) throw ValidationError("quad.k_tau must be > 0");
    if (!positive(omega_min)) throw ValidationError("quad.omega_min must be > 0");
    if (!positive(omega_max) || omega_max <= omega_min)
        throw ValidationError("quad.omega_max must exceed omega_min");
    if (!positive(tau_up)) throw ValidationError("quad.tau_up must be > 0");
    if (!positive(tau_down)) throw ValidationError("quad.tau_down must be > 0");
    if (tau_up > tau_down)
        throw ValidationError("quad.tau_up must not exceed tau_down (rotors spin up faster than down)");
    if (!(std::isfinite(gravity) && gravity >= 0.0)) throw ValidationError("quad.gravity must be >= 0");
    for (int s : spin_dirs)
        if (s != 1 && s != -1) throw ValidationError("quad.spin_dirs entries must be +1 or -1");
    if (spin_dirs[0] != spin_dirs[1] || spin_dirs[2] != spin_dirs[3] || spin_dirs[0] == spin_dirs[2])
        throw ValidationError("quad.spin_dirs must pair opposing rotors: {0,1} equal, {2,3} equal, pairs opposite");
    if (gravity > 0.0) {
        double wh = hover_speed(*this);
        if (!(omega_min < wh && wh < omega_max))
            throw ValidationError("hover speed must lie strictly inside [omega_min, omega_max]");
    }
}

double QuadState::yaw() const {
    const Eigen::Matrix3d r = orientation.toRotationMatrix();
    return std::atan2(r(1, 0), r(0, 0));
}

double hover_speed(const QuadParams& params) {
    return std::sqrt(params.mass * params.gravity / (4.0 * params.k_f));
}

double motor_step(double current, double commanded, double dt, const QuadParams& params) {
    if (!(dt > 0.0)) throw ValidationError("motor_step dt must be > 0");
    double tau = commanded > current ? params.tau_up : params.tau_down;
    double next = current + (1.0 - std::exp(-dt / tau)) * (commanded - current);
    return std::clamp(next, params.omega_min, params.omega_max);
}

Wrench wrench(const Eigen::Vector4d& rotor_speeds, const QuadParams& params) {
    const double d = params.arm_length / std::numbers::sqrt2;
    static constexpr double kx[4] = {+1.0, -1.0, +1.0, -1.0};
    static constexpr double ky[4] = {-1.0, +1.0, +1.0, -1.0};

    Wrench w;
    double tx = 0.0, ty = 0.0, tz = 0.0;
    for (int i = 0; i < 4; ++i) {
        double u = rotor_speeds[i] * rotor_speeds[i];
        w.thrust += params.k_f * u;
        tx += params.k_f * d * ky[i] * u;   // force along +z at (x_i, y_i)
        ty += -params.k_f * d * kx[i] * u;
        tz += params.k_tau * static_cast<double>(params.spin_dirs[i]) * u;
    }
    w.torque = {tx, ty, tz};
    return w;
}

QuadState step(const QuadState& state, const MotorCommand& cmd, double dt, const QuadParams& params) {
    if (!(dt > 0.0 && dt <= 0.01)) throw ValidationError("step dt must lie in (0, 0.01]");
    if (!finite(state.position) || !finite(state.velocity) || !finite(state.body_rates) ||
        !state.rotor_speeds.allFinite() || !state.orientation.coeffs().allFinite())
        throw NumericError("quad state is not finite");

    QuadState next = state;
    for (int i = 0; i < 4; ++i) {
        double commanded = std::clamp(cmd.speeds[i], params.omega_min, params.omega_max);
        next.rotor_speeds[i] = motor_step(state.rotor_speeds[i], commanded, dt, params);
    }
    const Wrench u = wrench(next.rotor_speeds, params);

    const Eigen::Vector3d p0 = state.position;
    const Eigen::Vector3d v0 = state.velocity;
    const Eigen::Vector4d q0 = quat_coeffs(state.orientation);
    const Eigen::Vector3d w0 = state.body_rates;

    Deriv k1 = dynamics(p0, v0, q0, w0, u, params);
    Deriv k2 = dynamics(p0 + 0.5 * dt * k1.dp, v0 + 0.5 * dt * k1.dv, q0 + 0.5 * dt * k1.dq,
                        w0 + 0.5 * dt * k1.dw, u, params);
    Deriv k3 = dynamics(p0 + 0.5 * dt * k2.dp, v0 + 0.5 * dt * k2.dv, q0 + 0.5 * dt * k2.dq,
                        w0 + 0.5 * dt * k2.dw, u, params);
    Deriv k4 = dynamics(p0 + dt * k3.dp, v0 + dt * k3.dv, q0 + dt * k3.dq, w0 + dt * k3.dw, u, params);

    const double s = dt / 6.0;
    next.position = p0 + s * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
    next.velocity = v0 + s * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    Eigen::Vector4d q = q0 + s * (k1.dq + 2.0 * k2.dq + 2.0 * k3.dq + k4.dq);
    next.body_rates = w0 + s * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);

    next.orientation = Eigen::Quaterniond(q[0], q[1], q[2], q[3]).normalized();
    return next;
}

QuadState hover_state(const QuadParams& params, const Eigen::Vector3d& position, double yaw) {
    QuadState s;
    s.position = position;
    s.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()));
    s.rotor_speeds.setConstant(std::clamp(hover_speed(params), params.omega_min, params.omega_max));
    return s;
}

}  // namespace dronevoc
