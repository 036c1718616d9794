#pragma once

#include <cmath>
#include <numbers>

namespace dronevoc {

// Wrap to (-pi, pi].
inline double wrap_pi(double a) {
    double w = std::remainder(a, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

// Shortest signed angular difference a - b, in (-pi, pi].
inline double angle_diff(double a, double b) { return wrap_pi(a - b); }

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }

}  // namespace dronevoc
