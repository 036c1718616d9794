#pragma once

#include <string>

#include "dronevoc/audio.hpp"
#include "dronevoc/spectral.hpp"

namespace dronevoc {

enum class GestureLabel { Positive, Negative, NegativeVocalics, Unsure };

const char* gesture_label_name(GestureLabel label);

// Audio-only gesture recognition. The STFT ridge inside [band_lo, band_hi]
// yields two slow tracks: the spectral centroid (collective thrust moves all
// rotors together, so a nod sweeps it at the gesture rate) and the spectral
// spread (a yaw twist splits the rotor pair speeds, widening the line at the
// gesture rate and its second harmonic while barely moving the centroid).
// The overlay tone is a strong 10 Hz line in both tracks.
struct ClassifyParams {
    double band_lo = 400.0;    // Hz, ridge band
    double band_hi = 2000.0;
    double gest_lo = 0.8;      // Hz, gesture-rate modulation band
    double gest_hi = 1.2;
    double second_lo = 1.8;    // Hz, second harmonic of the gesture rate
    double second_hi = 2.2;
    double voc_lo = 9.5;       // Hz, overlay-tone modulation band
    double voc_hi = 10.5;
    double broad_lo = 0.5;     // Hz, normalization band
    double broad_hi = 20.0;
    double voc_threshold = 0.2;      // overlay fraction that proves the tone
    double confidence_floor = 0.05;  // below this margin the label is Unsure

    void validate() const;
};

struct ClassifyResult {
    GestureLabel label = GestureLabel::Unsure;
    double s_voc = 0.0;  // overlay-band fraction of broad modulation energy
    double s_pos = 0.0;  // centroid-at-gesture-rate minus spread evidence
    double s_neg = 0.0;  // spread-at-gesture-rate minus centroid evidence
    double confidence = 0.0;  // winning margin compared against the floor
    ModSpectrum centroid_mod;
    ModSpectrum spread_mod;
};

// Classifies a clip that contains just the gesture (no sync burst).
ClassifyResult classify_clip(const AudioBuffer& clip, const ClassifyParams& params);

// Locates the gesture window from the sync burst (gap_s after onset,
// duration_s long), crops it, and classifies the cropped clip.
ClassifyResult classify_gesture(const AudioBuffer& audio, const AudioParams& audio_params,
                                double gap_s, double duration_s,
                                const ClassifyParams& params);

}  // namespace dronevoc
