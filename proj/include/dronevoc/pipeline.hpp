#pragma once

#include <string>
#include <vector>

#include "dronevoc/audio.hpp"
#include "dronevoc/classify.hpp"
#include "dronevoc/config.hpp"
#include "dronevoc/flight_log.hpp"
#include "dronevoc/gesture.hpp"
#include "dronevoc/spectral.hpp"

namespace dronevoc {

// One complete simulated recording session: hover warm-up, sync tone, mode
// switch gap_s later, gesture, hover cool-down.
struct SimOutputs {
    FlightLog log;                                    // control-rate telemetry
    std::vector<std::array<double, 4>> realized_speeds;  // control-rate, post lag
    AudioBuffer audio;                                // trimmed, tone injected
    double tone_log_s = 0.0;    // tone onset on the log clock (= warmup)
    double switch_log_s = 0.0;  // trajectory switch on the log clock
    double audio_offset_s = 0.0;  // audio time minus log time (= -audio_start_s)
    std::string hash;
};

SimOutputs simulate_run(const RunConfig& cfg, GestureKind kind);

// Writes flight_log.csv, realized_speeds.csv, audio.wav, and config.json
// into out_dir (created if missing).
void write_sim_outputs(const SimOutputs& sim, const RunConfig& cfg,
                       GestureKind kind, const std::string& out_dir);

struct AnalyzeReport {
    Stft spectrogram;
    RidgeTrack ridge;
    ClassifyResult classification;
};

/// Analysis of one recording: STFT, ridge, modulation spectra, label.  When
// the sync tone is detectable the classifier works on the scheduled gesture
// window; otherwise it analyzes the whole clip.
AnalyzeReport analyze_audio(const AudioBuffer& audio, const RunConfig& cfg);

// analyze_audio plus artifact files (spectrogram.csv, spectrogram.pgm,
// ridge.csv, modulation.csv) in out_dir.
AnalyzeReport analyze_to_dir(const AudioBuffer& audio, const RunConfig& cfg,
                             const std::string& out_dir);

struct GestureRunSummary {
    std::string gesture;
    double yaw_range_rad = 0.0;      // peak-to-peak smoothed yaw in the window
    double altitude_bump_m = 0.0;    // mean z minus hover height in the window
    double thrust_surplus_n = 0.0;   // mean thrust above the collective baseline
    std::string label;
    double s_voc = 0.0, s_pos = 0.0, s_neg = 0.0;
};

// Flight metrics and classifier scores for one simulated gesture run.
GestureRunSummary summarize_run(const RunConfig& cfg, GestureKind kind, const SimOutputs& sim,
                                const AnalyzeReport& rep);

struct ExperimentSummary {
    std::string hash;
    std::vector<GestureRunSummary> runs;  // nod, shake, vocalics
    double commanded_yaw_range_rad = 0.0;
    double margin_voc_vs_shake = 0.0;  // Euclidean distance between score vectors
    double margin_nod_vs_shake = 0.0;
    double margin_nod_vs_voc = 0.0;
    bool ordering_ok = false;   // vocalics < ordinary < commanded
    bool tracking_ok = false;   // ordinary >= half of commanded
    bool labels_ok = false;     // nod Positive, shake Negative, vocalics NegativeVocalics
    bool bump_ok = false;       // surplus > 0 and altitude error > 0 during shake
    bool passed = false;
};

// Runs all three gestures with the same config, analyzes each recording,
// writes per-gesture artifacts into out_dir/{nod,shake,vocalics}/ and the
// machine-readable summary into out_dir/experiment_summary.json.
ExperimentSummary run_experiment(const RunConfig& cfg, const std::string& out_dir);

std::string summary_json(const ExperimentSummary& summary);

}  // namespace dronevoc
