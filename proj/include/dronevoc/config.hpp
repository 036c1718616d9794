#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dronevoc/audio.hpp"
#include "dronevoc/classify.hpp"
#include "dronevoc/controller.hpp"
#include "dronevoc/pose.hpp"
#include "dronevoc/quad.hpp"

namespace dronevoc {

// Run timing and loop rates.  The mode switch and tone land on control ticks
// by construction, so warmup and gap must be whole numbers of ticks.
struct ScheduleParams {
    double control_rate_hz = 100.0;
    double physics_rate_hz = 1000.0;
    double warmup_s = 2.0;             // hover before the sync tone
    double gap_s = 0.5;                // tone onset to trajectory switch
    double gesture_duration_s = 4.0;
    double cooldown_s = 1.0;           // hover after the gesture
    double hover_height = 1.0;         // m
    double divergence_abort_m = 1.0;   // position error that aborts the run
    bool log_raw = true;               // include raw_* pose columns

    void validate() const;
};

struct AnalysisParams {
    std::size_t stft_window = 2048;
    std::size_t stft_hop = 480;
    ClassifyParams classify;

    void validate() const;
};

// Complete description of one reproducible run.  Serialized as JSON with
// four groups (quad, controller, acoustics, analysis) plus a top-level seed;
// unknown keys anywhere are rejected, absent keys keep their defaults.
struct RunConfig {
    std::uint64_t seed = 1;
    QuadParams quad;
    ControllerGains gains;
    double smoother_tau = 0.05;
    PoseNoise noise;
    ScheduleParams schedule;
    AudioParams acoustics;
    AnalysisParams analysis;

    void validate() const;
};

RunConfig default_config();

RunConfig parse_config(const std::string& json_text, const std::string& origin);
RunConfig load_config_file(const std::string& path);

// Canonical serialization: fixed key order, shortest round-trip numbers,
// trailing newline.  Equal configs produce identical text.
std::string dump_config(const RunConfig& cfg);

// FNV-1a 64-bit hash of the canonical serialization, as 16 lowercase hex
// digits; embedded in every output artifact.
std::string config_hash(const RunConfig& cfg);

// Flattened `group.key` / value pairs in canonical order, for CSV headers.
std::vector<std::pair<std::string, std::string>> config_header_pairs(const RunConfig& cfg);

}  // namespace dronevoc
