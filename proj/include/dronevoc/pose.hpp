#pragma once

#include <numbers>

#include <Eigen/Dense>

#include "dronevoc/quad.hpp"
#include "dronevoc/rng.hpp"

namespace dronevoc {

struct PoseSample {
    double t = 0.0;
    Eigen::Vector3d position{0.0, 0.0, 0.0};
    double roll = 0.0, pitch = 0.0, yaw = 0.0;  // ZYX Euler, radians
};

struct PoseNoise {
    double position_std = 0.0005;            // m (0.5 mm)
    double angle_std = 0.2 * std::numbers::pi / 180.0;  // rad (0.2 deg)
};

// True pose plus independent Gaussian noise per channel; deterministic for a
// given generator state.
PoseSample observe(const QuadState& state, double t, const PoseNoise& noise, Rng& rng);

// Exact discretization of a continuous first-order low-pass:
// y += (1 - exp(-dt/tau)) * (x - y), angles smoothed on the circle.
struct SmootherState {
    double tau = 0.05;  // s
    bool initialized = false;
    PoseSample last;
};

PoseSample smooth(SmootherState& state, const PoseSample& sample, double dt);

}  // namespace dronevoc
