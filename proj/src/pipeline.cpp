#include "dronevoc/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dronevoc/analysis_io.hpp"
#include "dronevoc/controller.hpp"
#include "dronevoc/errors.hpp"
#include "dronevoc/rng.hpp"
#include "dronevoc/sync.hpp"
#include "dronevoc/wav.hpp"

namespace dronevoc {

namespace {

constexpr std::uint64_t kPoseNoiseStream = 1;
constexpr std::uint64_t kAudioNoiseStream = 2;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

SimOutputs simulate_run(const RunConfig& cfg, GestureKind kind) {
    cfg.validate();
    const ScheduleParams& sch = cfg.schedule;
    const double ctrl_dt = 1.0 / sch.control_rate_hz;
    const double phys_dt = 1.0 / sch.physics_rate_hz;
    const long steps_per_tick =
        std::llround(sch.physics_rate_hz / sch.control_rate_hz);

    GestureSpec gspec;
    gspec.kind = kind;
    gspec.duration_s = sch.gesture_duration_s;
    gspec.base_position = {0.0, 0.0, sch.hover_height};
    gspec.base_yaw = 0.0;
    gspec.sample_rate_hz = sch.control_rate_hz;
    const std::vector<ReferenceSample> traj = sample_trajectory(gspec);

    const long warm_ticks = std::llround(sch.warmup_s * sch.control_rate_hz);
    const long gap_ticks = std::llround(sch.gap_s * sch.control_rate_hz);
    const long gest_ticks = std::llround(sch.gesture_duration_s * sch.control_rate_hz);
    const long cool_ticks = std::llround(sch.cooldown_s * sch.control_rate_hz);
    const long switch_tick = warm_ticks + gap_ticks;
    const long end_gesture_tick = switch_tick + gest_ticks;
    const long total_ticks = end_gesture_tick + cool_ticks;

    Rng pose_rng(substream_seed(cfg.seed, kPoseNoiseStream));
    Rng audio_rng(substream_seed(cfg.seed, kAudioNoiseStream));

    QuadState state = hover_state(cfg.quad, {0.0, 0.0, sch.hover_height}, 0.0);
    ControlState cs;
    cs.smoother.tau = cfg.smoother_tau;

    SimOutputs out;
    out.hash = config_hash(cfg);
    out.tone_log_s = sch.warmup_s;
    out.switch_log_s = sch.warmup_s + sch.gap_s;
    out.audio_offset_s = -cfg.acoustics.audio_start_s;
    out.log.has_raw = sch.log_raw;
    out.log.header.emplace_back("config_hash", out.hash);
    out.log.header.emplace_back("gesture", gesture_kind_name(kind));
    out.log.header.emplace_back("tone_log_s", fmt(out.tone_log_s));
    out.log.header.emplace_back("switch_log_s", fmt(out.switch_log_s));
    out.log.header.emplace_back("audio_offset_s", fmt(out.audio_offset_s));
    for (auto& kv : config_header_pairs(cfg)) out.log.header.push_back(std::move(kv));

    out.log.rows.reserve(static_cast<std::size_t>(total_ticks) + 1);
    out.realized_speeds.reserve(static_cast<std::size_t>(total_ticks) + 1);

    for (long k = 0; k <= total_ticks; ++k) {
        const double t = static_cast<double>(k) * ctrl_dt;
        const bool in_gesture = k >= switch_tick && k < end_gesture_tick;

        Setpoint sp;
        sp.position = Eigen::Vector3d(0.0, 0.0, sch.hover_height);
        if (in_gesture) {
            const ReferenceSample& r = traj[static_cast<std::size_t>(k - switch_tick)];
            sp.position = Eigen::Vector3d(r.position[0], r.position[1], r.position[2]);
            sp.velocity = Eigen::Vector3d(r.velocity[0], r.velocity[1], r.velocity[2]);
            sp.yaw = r.yaw;
            sp.yaw_rate = r.yaw_rate;
        }

        const PoseSample raw = observe(state, t, cfg.noise, pose_rng);
        const ControlCommand cmd = control_step(cfg.gains, cfg.quad, cs, raw, sp, ctrl_dt);

        const double pos_err = (state.position - sp.position).norm();
        if (pos_err > sch.divergence_abort_m) {
            char msg[128];
            std::snprintf(msg, sizeof(msg),
                          "controller diverged: position error %.3g m at t = %.3g s", pos_err, t);
            throw NumericError(msg);
        }

        FlightLogRow row;
        row.t = t;
        row.cmd_w = cmd.motor_cmd;
        row.x = cmd.smoothed.position.x();
        row.y = cmd.smoothed.position.y();
        row.z = cmd.smoothed.position.z();
        row.roll = cmd.smoothed.roll;
        row.pitch = cmd.smoothed.pitch;
        row.yaw = cmd.smoothed.yaw;
        if (sch.log_raw) {
            row.raw_x = raw.position.x();
            row.raw_y = raw.position.y();
            row.raw_z = raw.position.z();
            row.raw_roll = raw.roll;
            row.raw_pitch = raw.pitch;
            row.raw_yaw = raw.yaw;
        }
        row.battery_voltage = 3.7;
        row.control_method = in_gesture ? 1 : 0;
        out.log.rows.push_back(row);
        out.realized_speeds.push_back({state.rotor_speeds[0], state.rotor_speeds[1],
                                       state.rotor_speeds[2], state.rotor_speeds[3]});

        if (k < total_ticks) {
            MotorCommand mc;
            mc.speeds = Eigen::Vector4d(cmd.motor_cmd[0], cmd.motor_cmd[1], cmd.motor_cmd[2],
                                        cmd.motor_cmd[3]);
            for (long s = 0; s < steps_per_tick; ++s) {
                state = step(state, mc, phys_dt, cfg.quad);
            }
        }
    }

    AudioBuffer full =
        synthesize(out.realized_speeds, sch.control_rate_hz, cfg.acoustics, audio_rng);
    const long trim =
        std::llround(cfg.acoustics.audio_start_s * cfg.acoustics.sample_rate);
    if (trim > 0) {
        const long keep_from = std::min(trim, static_cast<long>(full.samples.size()));
        full.samples.erase(full.samples.begin(), full.samples.begin() + keep_from);
    }
    inject_tone(full, sch.warmup_s - cfg.acoustics.audio_start_s, cfg.acoustics);
    out.audio = std::move(full);
    return out;
}

void write_sim_outputs(const SimOutputs& sim, const RunConfig& cfg,
                       GestureKind kind, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_flight_log(out_dir + "/flight_log.csv", sim.log);

    std::vector<std::pair<std::string, std::string>> speed_header;
    speed_header.emplace_back("config_hash", sim.hash);
    speed_header.emplace_back("gesture", gesture_kind_name(kind));
    write_speed_log(out_dir + "/realized_speeds.csv", speed_header,
                    cfg.schedule.control_rate_hz, sim.realized_speeds);

    write_wav(out_dir + "/audio.wav", sim.audio, sim.hash);

    std::ofstream f(out_dir + "/config.json", std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open for writing: " + out_dir + "/config.json");
    f << dump_config(cfg);
    if (!f) throw ValidationError("write failed: " + out_dir + "/config.json");
}

AnalyzeReport analyze_audio(const AudioBuffer& audio, const RunConfig& cfg) {
    AnalyzeReport rep;
    rep.spectrogram = stft(audio, cfg.analysis.stft_window, cfg.analysis.stft_hop);
    rep.ridge = extract_ridge(rep.spectrogram, cfg.analysis.classify.band_lo,
                              cfg.analysis.classify.band_hi);
    try {
        rep.classification =
            classify_gesture(audio, cfg.acoustics, cfg.schedule.gap_s,
                             cfg.schedule.gesture_duration_s, cfg.analysis.classify);
    } catch (const ValidationError&) {
        // No usable sync tone: analyze the whole clip instead of a window.
        rep.classification = classify_clip(audio, cfg.analysis.classify);
    }
    return rep;
}

AnalyzeReport analyze_to_dir(const AudioBuffer& audio, const RunConfig& cfg,
                             const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    AnalyzeReport rep = analyze_audio(audio, cfg);
    const std::string hash = config_hash(cfg);
    write_spectrogram_csv(out_dir + "/spectrogram.csv", rep.spectrogram, hash);
    write_spectrogram_pgm(out_dir + "/spectrogram.pgm", rep.spectrogram, hash);
    write_ridge_csv(out_dir + "/ridge.csv", rep.ridge, hash);
    write_modulation_csv(out_dir + "/modulation.csv", rep.classification.centroid_mod,
                         rep.classification.spread_mod, hash);
    return rep;
}

GestureRunSummary summarize_run(const RunConfig& cfg, GestureKind kind,
                                const SimOutputs& sim, const AnalyzeReport& rep) {
    GestureRunSummary rs;
    rs.gesture = gesture_kind_name(kind);
    rs.label = gesture_label_name(rep.classification.label);
    rs.s_voc = rep.classification.s_voc;
    rs.s_pos = rep.classification.s_pos;
    rs.s_neg = rep.classification.s_neg;

    double yaw_min = 0.0, yaw_max = 0.0, z_sum = 0.0;
    double thrust_sum = 0.0, baseline_sum = 0.0;
    long n = 0;
    bool first = true;
    for (std::size_t i = 0; i < sim.log.rows.size(); ++i) {
        const FlightLogRow& row = sim.log.rows[i];
        if (row.control_method != 1) continue;
        if (first) {
            yaw_min = yaw_max = row.yaw;
            first = false;
        } else {
            yaw_min = std::min(yaw_min, row.yaw);
            yaw_max = std::max(yaw_max, row.yaw);
        }
        z_sum += row.z;
        const std::array<double, 4>& w = sim.realized_speeds[i];
        double sum_sq = 0.0, sum = 0.0;
        for (double wi : w) {
            sum_sq += wi * wi;
            sum += wi;
        }
        const double collective = sum / 4.0;
        thrust_sum += cfg.quad.k_f * sum_sq;
        baseline_sum += 4.0 * cfg.quad.k_f * collective * collective;
        ++n;
    }
    if (n > 0) {
        rs.yaw_range_rad = yaw_max - yaw_min;
        rs.altitude_bump_m = z_sum / static_cast<double>(n) - cfg.schedule.hover_height;
        rs.thrust_surplus_n = (thrust_sum - baseline_sum) / static_cast<double>(n);
    }
    return rs;
}

namespace {

double score_distance(const GestureRunSummary& x, const GestureRunSummary& y) {
    const double dv = x.s_voc - y.s_voc;
    const double dp = x.s_pos - y.s_pos;
    const double dn = x.s_neg - y.s_neg;
    return std::sqrt(dv * dv + dp * dp + dn * dn);
}

}  // namespace

ExperimentSummary run_experiment(const RunConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    ExperimentSummary sum;
    sum.hash = config_hash(cfg);
    sum.commanded_yaw_range_rad = 2.0 * kShakeYawAmplitudeRad;

    const GestureKind kinds[3] = {GestureKind::PositiveNod, GestureKind::NegativeOrdinary,
                                  GestureKind::NegativeVocalics};
    for (GestureKind kind : kinds) {
        const std::string dir = out_dir + "/" + gesture_kind_name(kind);
        const SimOutputs sim = simulate_run(cfg, kind);
        write_sim_outputs(sim, cfg, kind, dir);
        const AnalyzeReport rep = analyze_to_dir(sim.audio, cfg, dir);
        sum.runs.push_back(summarize_run(cfg, kind, sim, rep));
    }

    const GestureRunSummary& nod = sum.runs[0];
    const GestureRunSummary& shake = sum.runs[1];
    const GestureRunSummary& voc = sum.runs[2];
    sum.margin_voc_vs_shake = score_distance(voc, shake);
    sum.margin_nod_vs_shake = score_distance(nod, shake);
    sum.margin_nod_vs_voc = score_distance(nod, voc);
    sum.ordering_ok = voc.yaw_range_rad < shake.yaw_range_rad &&
                      shake.yaw_range_rad < sum.commanded_yaw_range_rad;
    sum.tracking_ok = shake.yaw_range_rad >= 0.5 * sum.commanded_yaw_range_rad;
    sum.labels_ok = nod.label == "Positive" && shake.label == "Negative" &&
                    voc.label == "NegativeVocalics";
    sum.bump_ok = shake.thrust_surplus_n > 0.0 && shake.altitude_bump_m > 0.0;
    sum.passed = sum.ordering_ok && sum.tracking_ok && sum.labels_ok && sum.bump_ok;

    std::ofstream f(out_dir + "/experiment_summary.json", std::ios::binary | std::ios::trunc);
    if (!f) {
        throw ValidationError("cannot open for writing: " + out_dir + "/experiment_summary.json");
    }
    f << summary_json(sum);
    if (!f) throw ValidationError("write failed: " + out_dir + "/experiment_summary.json");
    return sum;
}

std::string summary_json(const ExperimentSummary& summary) {
    nlohmann::ordered_json root;
    root["config_hash"] = summary.hash;
    root["commanded_yaw_range_rad"] = summary.commanded_yaw_range_rad;
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const GestureRunSummary& r : summary.runs) {
        nlohmann::ordered_json jr;
        jr["gesture"] = r.gesture;
        jr["yaw_range_rad"] = r.yaw_range_rad;
        jr["altitude_bump_m"] = r.altitude_bump_m;
        jr["thrust_surplus_n"] = r.thrust_surplus_n;
        jr["label"] = r.label;
        jr["s_voc"] = r.s_voc;
        jr["s_pos"] = r.s_pos;
        jr["s_neg"] = r.s_neg;
        runs.push_back(std::move(jr));
    }
    root["runs"] = std::move(runs);
    root["margin_voc_vs_shake"] = summary.margin_voc_vs_shake;
    root["margin_nod_vs_shake"] = summary.margin_nod_vs_shake;
    root["margin_nod_vs_voc"] = summary.margin_nod_vs_voc;
    root["ordering_ok"] = summary.ordering_ok;
    root["tracking_ok"] = summary.tracking_ok;
    root["labels_ok"] = summary.labels_ok;
    root["bump_ok"] = summary.bump_ok;
    root["passed"] = summary.passed;
    return root.dump(2) + "\n";
}

}  // namespace dronevoc
