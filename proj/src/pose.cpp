#include "dronevoc/pose.hpp"

#include <cmath>

#include "dronevoc/angles.hpp"
#include "dronevoc/errors.hpp"

namespace dronevoc {

PoseSample observe(const QuadState& state, double t, const PoseNoise& noise, Rng& rng) {
    if (noise.position_std < 0.0 || noise.angle_std < 0.0) {
        throw ValidationError("pose noise standard deviations must be non-negative");
    }
    const Eigen::Matrix3d r = state.orientation.toRotationMatrix();
    PoseSample s;
    s.t = t;
    s.position = state.position;
    // ZYX Euler angles; the vehicle stays near level so the asin branch is safe.
    s.roll = std::atan2(r(2, 1), r(2, 2));
    s.pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
    s.yaw = std::atan2(r(1, 0), r(0, 0));
    for (int i = 0; i < 3; ++i) s.position[i] += noise.position_std * rng.gaussian();
    s.roll = wrap_pi(s.roll + noise.angle_std * rng.gaussian());
    s.pitch = wrap_pi(s.pitch + noise.angle_std * rng.gaussian());
    s.yaw = wrap_pi(s.yaw + noise.angle_std * rng.gaussian());
    return s;
}

PoseSample smooth(SmootherState& state, const PoseSample& sample, double dt) {
    if (state.tau <= 0.0) throw ValidationError("smoother time constant must be positive");
    if (dt <= 0.0) throw ValidationError("smoother time step must be positive");
    if (!state.initialized) {
        state.last = sample;
        state.initialized = true;
        return sample;
    }
    const double alpha = 1.0 - std::exp(-dt / state.tau);
    PoseSample& y = state.last;
    y.t = sample.t;
    y.position += alpha * (sample.position - y.position);
    // Angles move along the shorter arc so a wrap in the input does not drag
    // the estimate across the circle.
    y.roll = wrap_pi(y.roll + alpha * angle_diff(sample.roll, y.roll));
    y.pitch = wrap_pi(y.pitch + alpha * angle_diff(sample.pitch, y.pitch));
    y.yaw = wrap_pi(y.yaw + alpha * angle_diff(sample.yaw, y.yaw));
    return y;
}

}  // namespace dronevoc
