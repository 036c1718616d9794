#include "dronevoc/sync.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "dronevoc/errors.hpp"

namespace dronevoc {

ToneDetection detect_tone(const AudioBuffer& buffer, const AudioParams& params) {
    params.validate();
    if (buffer.sample_rate <= 0.0) throw ValidationError("audio buffer has no sample rate");
    const double fs = buffer.sample_rate;
    // 2 ms analysis window, 0.5 ms hop: fine enough to localize a 5 ms edge.
    const std::size_t win = static_cast<std::size_t>(std::llround(0.002 * fs));
    const std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.0005 * fs)));
    if (buffer.samples.size() < win || win < 4) {
        throw ValidationError("audio too short for tone detection");
    }

    const double w = 2.0 * std::numbers::pi * params.tone_freq / fs;
    const double coeff = 2.0 * std::cos(w);

    std::vector<double> env;
    std::vector<double> env_t;
    const std::size_t n = buffer.samples.size();
    for (std::size_t start = 0; start + win <= n; start += hop) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < win; ++i) {
            s0 = buffer.samples[start + i] + coeff * s1 - s2;
            s2 = s1;
            s1 = s0;
        }
        const double power = s1 * s1 + s2 * s2 - coeff * s1 * s2;
        const double amp = 2.0 * std::sqrt(std::max(0.0, power)) / static_cast<double>(win);
        env.push_back(amp);
        env_t.push_back((static_cast<double>(start) + static_cast<double>(win) / 2.0) / fs);
    }

    double peak = 0.0;
    for (double e : env) peak = std::max(peak, e);
    // The burst must rise well clear of whatever rotor harmonics leak into
    // the tone bin; a silent or tone-free recording is an error, not onset 0.
    if (peak < 1e-4) throw ValidationError("no sync tone found in audio");
    const double half = 0.5 * peak;

    std::size_t idx = env.size();
    for (std::size_t i = 0; i < env.size(); ++i) {
        if (env[i] >= half) {
            idx = i;
            break;
        }
    }
    if (idx == env.size()) throw ValidationError("no sync tone found in audio");

    double t_cross;
    if (idx == 0) {
        t_cross = env_t[0];
    } else {
        const double e0 = env[idx - 1];
        const double e1 = env[idx];
        const double frac = (e1 > e0) ? (half - e0) / (e1 - e0) : 1.0;
        t_cross = env_t[idx - 1] + frac * (env_t[idx] - env_t[idx - 1]);
    }

    ToneDetection out;
    out.onset_s = t_cross - 0.5 * params.tone_edge;
    out.peak_envelope = peak;
    return out;
}

AlignResult align_log(const AudioBuffer& buffer, const AudioParams& params,
                      const FlightLog& log, double gap_s) {
    if (gap_s < 0.0) throw ValidationError("gap_s must be non-negative");
    if (log.rows.empty()) throw ValidationError("flight log has no rows");

    int transitions = 0;
    double switch_t = 0.0;
    for (std::size_t i = 1; i < log.rows.size(); ++i) {
        const int prev = log.rows[i - 1].control_method;
        const int cur = log.rows[i].control_method;
        if (prev == 0 && cur == 1) {
            ++transitions;
            switch_t = log.rows[i].t;
        } else if (prev == 1 && cur == 0) {
            // Returning to hover after the gesture is expected; a second
            // 0->1 edge is what invalidates alignment.
        }
    }
    if (transitions != 1) {
        throw ValidationError("flight log must contain exactly one hover-to-trajectory switch");
    }

    const ToneDetection tone = detect_tone(buffer, params);
    AlignResult out;
    out.tone_onset_s = tone.onset_s;
    out.gesture_audio_s = tone.onset_s + gap_s;
    out.switch_log_s = switch_t;
    out.offset_s = out.gesture_audio_s - switch_t;
    return out;
}

}  // namespace dronevoc
