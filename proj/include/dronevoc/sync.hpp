#pragma once

#include "dronevoc/audio.hpp"
#include "dronevoc/flight_log.hpp"

namespace dronevoc {

struct ToneDetection {
    double onset_s = 0.0;       // estimated start of the burst, audio clock
    double peak_envelope = 0.0; // peak amplitude of the tone-band envelope
};

// Locates the sync burst by sliding a Goertzel bin at tone_freq across the
// buffer and finding where the envelope first crosses half its plateau; the
// raised-cosine edge reaches half amplitude tone_edge/2 after true onset, so
// that bias is subtracted.  Throws ValidationError when no burst stands out.
ToneDetection detect_tone(const AudioBuffer& buffer, const AudioParams& params);

struct AlignResult {
    double offset_s = 0.0;       // audio time minus log time
    double tone_onset_s = 0.0;   // audio clock
    double gesture_audio_s = 0.0;  // tone onset + gap, audio clock
    double switch_log_s = 0.0;   // log time of the hover-to-trajectory switch
};

// Aligns the audio clock with the log clock: the gesture starts gap_s after
// the sync burst and at the log's single 0->1 control_method transition, so
// offset = (onset + gap_s) - switch_log_s and a log timestamp t appears in
// the audio at t + offset.  Requires exactly one transition.
AlignResult align_log(const AudioBuffer& buffer, const AudioParams& params,
                      const FlightLog& log, double gap_s);

}  // namespace dronevoc
