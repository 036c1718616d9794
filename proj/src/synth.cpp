#include "dronevoc/audio.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "dronevoc/errors.hpp"
#include "dronevoc/kernels.hpp"

namespace dronevoc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void AudioParams::validate() const {
    if (!(sample_rate > 0.0)) throw ValidationError("sample_rate must be positive");
    for (double a : harmonic_amps) {
        if (a < 0.0) throw ValidationError("harmonic amplitudes must be non-negative");
    }
    if (noise_floor < 0.0) throw ValidationError("noise_floor must be non-negative");
    if (!(master_gain > 0.0)) throw ValidationError("master_gain must be positive");
    if (!(tone_freq > 0.0)) throw ValidationError("tone_freq must be positive");
    if (!(tone_duration > 0.0)) throw ValidationError("tone_duration must be positive");
    if (tone_amp < 0.0) throw ValidationError("tone_amp must be non-negative");
    if (tone_edge < 0.0) throw ValidationError("tone_edge must be non-negative");
    if (2.0 * tone_edge > tone_duration) {
        throw ValidationError("tone_edge fades must fit inside tone_duration");
    }
    if (audio_start_s < 0.0) throw ValidationError("audio_start_s must be non-negative");
}

AudioBuffer synthesize(const std::vector<std::array<double, 4>>& speeds,
                       double speed_rate, const AudioParams& params, Rng& rng) {
    params.validate();
    if (speeds.size() < 2) throw ValidationError("speed log needs at least two samples");
    if (!(speed_rate > 0.0)) throw ValidationError("speed_rate must be positive");

    const double fs = params.sample_rate;
    const double duration = static_cast<double>(speeds.size() - 1) / speed_rate;
    const std::size_t n = static_cast<std::size_t>(std::llround(duration * fs));

    AudioBuffer out;
    out.sample_rate = fs;
    out.samples.assign(n, 0.0);
    if (n == 0) return out;

    // Per-rotor speed track resampled to the audio rate, reused per harmonic.
    std::vector<double> freq(n);
    std::vector<double> phase(n);
    const std::size_t last = speeds.size() - 2;
    const kernels::Ops& k = kernels::ops();
    for (int rotor = 0; rotor < 4; ++rotor) {
        for (std::size_t i = 0; i < n; ++i) {
            const double pos = static_cast<double>(i) / fs * speed_rate;
            std::size_t idx = static_cast<std::size_t>(pos);
            if (idx > last) idx = last;
            const double frac = pos - static_cast<double>(idx);
            const double omega =
                (1.0 - frac) * speeds[idx][rotor] + frac * speeds[idx + 1][rotor];
            freq[i] = kBladeCount * omega / kTwoPi;  // blade-pass frequency, Hz
        }
        for (int h = 0; h < kHarmonicCount; ++h) {
            const double amp = params.harmonic_amps[static_cast<std::size_t>(h)];
            if (amp == 0.0) continue;
            const double fmul = static_cast<double>(h + 1);
            double p = kTwoPi * 0.25 * static_cast<double>(rotor);  // decorrelate rotors
            for (std::size_t i = 0; i < n; ++i) {
                phase[i] = p;
                p += kTwoPi * fmul * freq[i] / fs;
                while (p >= kTwoPi) p -= kTwoPi;
            }
            k.add_scaled_sin(phase.data(), amp, out.samples.data(), n);
        }
    }

    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = out.samples[i];
        if (params.noise_floor > 0.0) s += params.noise_floor * rng.gaussian();
        s *= params.master_gain;
        out.samples[i] = s;
        peak = std::max(peak, std::abs(s));
    }
    if (peak > 1.0) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "audio clipped: max |sample| = %.6g at master_gain = %.6g; "
                      "reduce master_gain below %.6g",
                      peak, params.master_gain, params.master_gain / peak);
        throw NumericError(msg);
    }
    return out;
}

void inject_tone(AudioBuffer& buffer, double t_start, const AudioParams& params) {
    params.validate();
    if (buffer.sample_rate <= 0.0) throw ValidationError("audio buffer has no sample rate");
    const double fs = buffer.sample_rate;
    const std::size_t n = buffer.samples.size();
    const double t_end = t_start + params.tone_duration;
    const long i0 = std::max(0L, static_cast<long>(std::ceil(t_start * fs)));
    const long i1 = std::min(static_cast<long>(n), static_cast<long>(std::ceil(t_end * fs)));
    for (long i = i0; i < i1; ++i) {
        const double t = static_cast<double>(i) / fs - t_start;
        double w = 1.0;
        if (params.tone_edge > 0.0) {
            if (t < params.tone_edge) {
                w = 0.5 * (1.0 - std::cos(std::numbers::pi * t / params.tone_edge));
            } else if (t > params.tone_duration - params.tone_edge) {
                const double r = params.tone_duration - t;
                w = 0.5 * (1.0 - std::cos(std::numbers::pi * r / params.tone_edge));
            }
        }
        buffer.samples[static_cast<std::size_t>(i)] +=
            params.tone_amp * w * std::sin(kTwoPi * params.tone_freq * t);
    }
}

}  // namespace dronevoc
