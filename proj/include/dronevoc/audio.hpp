#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "dronevoc/rng.hpp"

namespace dronevoc {

inline constexpr int kBladeCount = 2;
inline constexpr int kHarmonicCount = 3;

struct AudioParams {
    double sample_rate = 48000.0;  // Hz
    std::array<double, kHarmonicCount> harmonic_amps{1.0, 0.35, 0.15};
    double noise_floor = 0.005;  // Gaussian RMS added pre-gain
    double master_gain = 0.02;
    double tone_freq = 2000.0;    // Hz
    double tone_duration = 0.1;   // s
    double tone_amp = 0.5;        // pre-gain peak amplitude is tone_amp itself
    double tone_edge = 0.005;     // s, raised-cosine fade at each end
    double audio_start_s = 0.0;   // log time of audio sample 0 after trimming

    void validate() const;
};

struct AudioBuffer {
    double sample_rate = 48000.0;
    std::vector<double> samples;

    double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

// Renders rotor sound from a realized-speed log sampled at speed_rate Hz.
// Each rotor contributes phase-continuous harmonics of its blade-pass
// frequency (kBladeCount * omega / 2pi); speeds are linearly interpolated to
// the audio rate.  Gaussian noise at noise_floor RMS is mixed in and the sum
// is scaled by master_gain.  Throws NumericError if any sample exceeds full
// scale.
AudioBuffer synthesize(const std::vector<std::array<double, 4>>& speeds,
                       double speed_rate, const AudioParams& params, Rng& rng);

// Adds a sine burst with raised-cosine edges at t_start seconds into the
// buffer.  The burst is clipped to the buffer extent.
void inject_tone(AudioBuffer& buffer, double t_start, const AudioParams& params);

}  // namespace dronevoc
