#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

namespace dronevoc {

inline constexpr double kNodAmplitudeM = 0.03;
inline constexpr double kShakeYawAmplitudeRad = std::numbers::pi / 6.0;
inline constexpr double kOverlayYawAmplitudeRad = std::numbers::pi / 3.0;
inline constexpr double kGestureFreqHz = 1.0;
inline constexpr double kOverlayFreqHz = 10.0;

// h(t, f, p) = sin(2*pi*f*t + p)
double harmonic(double t, double freq_hz, double phase_rad);

// Height offset of the nod gesture: 0.03 * h(t, 1, pi) metres.
// Phase pi makes the first quarter-period move downward.
double delta_z(double t);
double delta_z_rate(double t);
double delta_z_accel(double t);

// Yaw offset of the ordinary shake: (pi/6) * h(t, 1, pi) radians (60 deg peak to peak).
double delta_psi(double t);
double delta_psi_rate(double t);
double delta_psi_accel(double t);

// Shake with the acoustically salient overlay: delta_psi + (pi/3) * h(t, 10, 0).
double delta_psi_voc(double t);
double delta_psi_voc_rate(double t);
double delta_psi_voc_accel(double t);

enum class GestureKind { PositiveNod, NegativeOrdinary, NegativeVocalics };

const char* gesture_kind_name(GestureKind k);
// Accepts the CLI spellings nod | shake | vocalics; throws ValidationError otherwise.
GestureKind gesture_kind_from_name(const std::string& name);

struct GestureSpec {
    GestureKind kind = GestureKind::PositiveNod;
    double duration_s = 4.0;
    std::array<double, 3> base_position{0.0, 0.0, 1.0};
    double base_yaw = 0.0;
    double sample_rate_hz = 100.0;

    // duration > 0, sample_rate > 0, duration a whole multiple of the 1 s
    // gesture period so trajectories start and end at zero offset.
    void validate() const;
};

struct ReferenceSample {
    double t = 0.0;
    std::array<double, 3> position{};
    double yaw = 0.0;
    std::array<double, 3> velocity{};
    double yaw_rate = 0.0;
    std::array<double, 3> acceleration{};  // feedforward consumed by the position loop
    double yaw_accel = 0.0;
};

// Uniform samples at 1/sample_rate over [0, duration], endpoints included.
std::vector<ReferenceSample> sample_trajectory(const GestureSpec& spec);

// Header `t,x,y,z,yaw,vx,vy,vz,yaw_rate`, 9 significant digits, LF endings.
void write_trajectory_csv(const std::vector<ReferenceSample>& samples, const std::string& path,
                          const std::string& config_hash_hex = "");

}  // namespace dronevoc
