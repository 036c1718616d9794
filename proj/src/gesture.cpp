#include "dronevoc/gesture.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kNodAmp = kNodAmplitudeM;
constexpr double kShakeAmp = kShakeYawAmplitudeRad;
constexpr double kVocAmp = kOverlayYawAmplitudeRad;
constexpr double kGestureFreq = kGestureFreqHz;
constexpr double kVocFreq = kOverlayFreqHz;

double dsin(double t, double f, double p) {  // d/dt sin(2 pi f t + p)
    return 2.0 * kPi * f * std::cos(2.0 * kPi * f * t + p);
}

double ddsin(double t, double f, double p) {  // d2/dt2
    double w = 2.0 * kPi * f;
    return -w * w * std::sin(2.0 * kPi * f * t + p);
}

}  // namespace

double harmonic(double t, double freq_hz, double phase_rad) {
    return std::sin(2.0 * kPi * freq_hz * t + phase_rad);
}

double delta_z(double t) { return kNodAmp * harmonic(t, kGestureFreq, kPi); }
double delta_z_rate(double t) { return kNodAmp * dsin(t, kGestureFreq, kPi); }
double delta_z_accel(double t) { return kNodAmp * ddsin(t, kGestureFreq, kPi); }

double delta_psi(double t) { return kShakeAmp * harmonic(t, kGestureFreq, kPi); }
double delta_psi_rate(double t) { return kShakeAmp * dsin(t, kGestureFreq, kPi); }
double delta_psi_accel(double t) { return kShakeAmp * ddsin(t, kGestureFreq, kPi); }

double delta_psi_voc(double t) { return delta_psi(t) + kVocAmp * harmonic(t, kVocFreq, 0.0); }
double delta_psi_voc_rate(double t) { return delta_psi_rate(t) + kVocAmp * dsin(t, kVocFreq, 0.0); }
double delta_psi_voc_accel(double t) { return delta_psi_accel(t) + kVocAmp * ddsin(t, kVocFreq, 0.0); }

const char* gesture_kind_name(GestureKind k) {
    switch (k) {
        case GestureKind::PositiveNod: return "nod";
        case GestureKind::NegativeOrdinary: return "shake";
        case GestureKind::NegativeVocalics: return "vocalics";
    }
    return "unknown";
}

GestureKind gesture_kind_from_name(const std::string& name) {
    if (name == "nod") return GestureKind::PositiveNod;
    if (name == "shake") return GestureKind::NegativeOrdinary;
    if (name == "vocalics") return GestureKind::NegativeVocalics;
    throw ValidationError("unknown gesture '" + name + "' (expected nod|shake|vocalics)");
}

void GestureSpec::validate() const {
    if (!(duration_s > 0.0)) throw ValidationError("gesture duration must be > 0");
    if (!(sample_rate_hz > 0.0)) throw ValidationError("gesture sample_rate must be > 0");
    double periods = duration_s * kGestureFreq;
    if (std::abs(periods - std::round(periods)) > 1e-9)
        throw ValidationError("gesture duration must be a whole number of 1 s periods");
    if (!std::isfinite(base_yaw) || !std::isfinite(base_position[0]) ||
        !std::isfinite(base_position[1]) || !std::isfinite(base_position[2]))
        throw ValidationError("gesture base pose must be finite");
}

std::vector<ReferenceSample> sample_trajectory(const GestureSpec& spec) {
    spec.validate();
    const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate_hz));
    std::vector<ReferenceSample> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        double t = static_cast<double>(i) / spec.sample_rate_hz;
        ReferenceSample& s = out[i];
        s.t = t;
        s.position = spec.base_position;
        s.yaw = spec.base_yaw;
        switch (spec.kind) {
            case GestureKind::PositiveNod:
                s.position[2] += delta_z(t);
                s.velocity[2] = delta_z_rate(t);
                s.acceleration[2] = delta_z_accel(t);
                break;
            case GestureKind::NegativeOrdinary:
                s.yaw += delta_psi(t);
                s.yaw_rate = delta_psi_rate(t);
                s.yaw_accel = delta_psi_accel(t);
                break;
            case GestureKind::NegativeVocalics:
                s.yaw += delta_psi_voc(t);
                s.yaw_rate = delta_psi_voc_rate(t);
                s.yaw_accel = delta_psi_voc_accel(t);
                break;
        }
    }
    return out;
}

void write_trajectory_csv(const std::vector<ReferenceSample>& samples, const std::string& path,
                          const std::string& config_hash_hex) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + path + " for writing");
    if (!config_hash_hex.empty()) f << "# config_hash: " << config_hash_hex << "\n";
    f << "t,x,y,z,yaw,vx,vy,vz,yaw_rate\n";
    char line[320];
    for (const ReferenceSample& s : samples) {
        std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                      s.t, s.position[0], s.position[1], s.position[2], s.yaw,
                      s.velocity[0], s.velocity[1], s.velocity[2], s.yaw_rate);
        f << line;
    }
    if (!f) throw ValidationError("short write to " + path);
}

}  // namespace dronevoc
