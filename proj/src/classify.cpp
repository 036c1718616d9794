#include "dronevoc/classify.hpp"

#include <algorithm>
#include <cmath>

#include "dronevoc/errors.hpp"
#include "dronevoc/sync.hpp"

namespace dronevoc {

const char* gesture_label_name(GestureLabel label) {
    switch (label) {
        case GestureLabel::Positive: return "Positive";
        case GestureLabel::Negative: return "Negative";
        case GestureLabel::NegativeVocalics: return "NegativeVocalics";
        case GestureLabel::Unsure: return "Unsure";
    }
    return "Unsure";
}

void ClassifyParams::validate() const {
    auto band = [](double lo, double hi, const char* name) {
        if (!(lo >= 0.0) || !(hi > lo)) {
            throw ValidationError(std::string(name) + " band must satisfy 0 <= lo < hi");
        }
    };
    band(band_lo, band_hi, "ridge");
    band(gest_lo, gest_hi, "gesture");
    band(second_lo, second_hi, "second-harmonic");
    band(voc_lo, voc_hi, "overlay");
    band(broad_lo, broad_hi, "broad");
    if (!(voc_threshold > 0.0) || !(voc_threshold < 1.0)) {
        throw ValidationError("voc_threshold must lie in (0, 1)");
    }
    if (confidence_floor < 0.0) throw ValidationError("confidence_floor must be non-negative");
}

ClassifyResult classify_clip(const AudioBuffer& clip, const ClassifyParams& params) {
    params.validate();
    const Stft s = stft(clip);
    const RidgeTrack ridge = extract_ridge(s, params.band_lo, params.band_hi);
    if (ridge.centroid_hz.size() < 8) {
        throw ValidationError("clip too short to classify");
    }

    ClassifyResult out;
    out.centroid_mod = modulation_spectrum(ridge.centroid_hz, ridge.frame_rate);
    out.spread_mod = modulation_spectrum(ridge.spread_hz, ridge.frame_rate);

    const double c_broad = out.centroid_mod.band_energy(params.broad_lo, params.broad_hi);
    const double b_broad = out.spread_mod.band_energy(params.broad_lo, params.broad_hi);
    const double c_voc = out.centroid_mod.band_energy(params.voc_lo, params.voc_hi);
    const double b_voc = out.spread_mod.band_energy(params.voc_lo, params.voc_hi);
    const double c_gest = out.centroid_mod.band_energy(params.gest_lo, params.gest_hi);
    const double b_gest = out.spread_mod.band_energy(params.gest_lo, params.gest_hi) +
                          out.spread_mod.band_energy(params.second_lo, params.second_hi);

    const double total = c_broad + b_broad;
    if (total <= 0.0) {
        out.label = GestureLabel::Unsure;
        return out;
    }
    out.s_voc = (c_voc + b_voc) / total;
    const double c_rel = c_broad > 0.0 ? c_gest / c_broad : 0.0;
    const double b_rel = b_broad > 0.0 ? b_gest / b_broad : 0.0;
    out.s_pos = c_rel - b_rel;
    out.s_neg = b_rel - c_rel;

    if (out.s_voc >= params.voc_threshold) {
        out.label = GestureLabel::NegativeVocalics;
        out.confidence = out.s_voc;
    } else {
        const double best = std::max(out.s_pos, out.s_neg);
        out.confidence = best;
        if (best < params.confidence_floor) {
            out.label = GestureLabel::Unsure;
        } else {
            out.label = out.s_pos >= out.s_neg ? GestureLabel::Positive : GestureLabel::Negative;
        }
    }
    return out;
}

ClassifyResult classify_gesture(const AudioBuffer& audio, const AudioParams& audio_params,
                                double gap_s, double duration_s,
                                const ClassifyParams& params) {
    if (!(duration_s > 0.0)) throw ValidationError("duration_s must be positive");
    if (gap_s < 0.0) throw ValidationError("gap_s must be non-negative");
    const ToneDetection tone = detect_tone(audio, audio_params);
    const double t0 = tone.onset_s + gap_s;
    const double fs = audio.sample_rate;
    const long i0 = std::max(0L, static_cast<long>(std::llround(t0 * fs)));
    const long i1 = std::min(static_cast<long>(audio.samples.size()),
                             static_cast<long>(std::llround((t0 + duration_s) * fs)));
    if (i1 <= i0) throw ValidationError("gesture window lies outside the audio");
    AudioBuffer clip;
    clip.sample_rate = fs;
    clip.samples.assign(audio.samples.begin() + i0, audio.samples.begin() + i1);
    return classify_clip(clip, params);
}

}  // namespace dronevoc
