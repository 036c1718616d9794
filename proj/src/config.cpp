#include "dronevoc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

using Json = nlohmann::ordered_json;

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError("config " + path + ": " + what);
}

void check_keys(const Json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail(path, "unknown key '" + item.key() + "'");
    }
}

void get_double(const Json& obj, const std::string& path, const char* key, double& dst) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    dst = v.get<double>();
}

void get_bool(const Json& obj, const std::string& path, const char* key, bool& dst) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
    dst = v.get<bool>();
}

void get_u64(const Json& obj, const std::string& path, const char* key, std::uint64_t& dst) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        fail(path + "." + key, "expected a non-negative integer");
    }
    dst = v.get<std::uint64_t>();
}

void get_size(const Json& obj, const std::string& path, const char* key, std::size_t& dst) {
    std::uint64_t v = dst;
    get_u64(obj, path, key, v);
    dst = static_cast<std::size_t>(v);
}

void get_vec3(const Json& obj, const std::string& path, const char* key, Eigen::Vector3d& dst) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) fail(path + "." + key, "expected an array of 3 numbers");
    for (int i = 0; i < 3; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number()) {
            fail(path + "." + key, "expected an array of 3 numbers");
        }
        dst[i] = v[static_cast<std::size_t>(i)].get<double>();
    }
}

void get_spin_dirs(const Json& obj, const std::string& path, const char* key,
                   std::array<int, 4>& dst) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    if (!v.is_array() || v.size() != 4) fail(path + "." + key, "expected an array of 4 integers");
    for (std::size_t i = 0; i < 4; ++i) {
        if (!v[i].is_number_integer()) fail(path + "." + key, "expected an array of 4 integers");
        dst[i] = v[i].get<int>();
    }
}

void get_amps(const Json& obj, const std::string& path, const char* key,
              std::array<double, kHarmonicCount>& dst) {
    if (!obj.contains(key)) return;
    const Json& v = obj.at(key);
    if (!v.is_array() || v.size() != kHarmonicCount) {
        fail(path + "." + key, "expected an array of 3 numbers");
    }
    for (std::size_t i = 0; i < kHarmonicCount; ++i) {
        if (!v[i].is_number()) fail(path + "." + key, "expected an array of 3 numbers");
        dst[i] = v[i].get<double>();
    }
}

Json vec3_json(const Eigen::Vector3d& v) { return Json::array({v[0], v[1], v[2]}); }

}  // namespace

void ScheduleParams::validate() const {
    if (!(control_rate_hz > 0.0)) throw ValidationError("control_rate_hz must be positive");
    if (!(physics_rate_hz > 0.0)) throw ValidationError("physics_rate_hz must be positive");
    if (!near_integer(physics_rate_hz / control_rate_hz)) {
        throw ValidationError("physics_rate_hz must be an integer multiple of control_rate_hz");
    }
    if (warmup_s < 0.0) throw ValidationError("warmup_s must be non-negative");
    if (gap_s < 0.0) throw ValidationError("gap_s must be non-negative");
    if (!(gesture_duration_s > 0.0)) throw ValidationError("gesture_duration_s must be positive");
    if (cooldown_s < 0.0) throw ValidationError("cooldown_s must be non-negative");
    if (!near_integer(warmup_s * control_rate_hz)) {
        throw ValidationError("warmup_s must be a whole number of control ticks");
    }
    if (!near_integer(gap_s * control_rate_hz)) {
        throw ValidationError("gap_s must be a whole number of control ticks");
    }
    if (!near_integer(cooldown_s * control_rate_hz)) {
        throw ValidationError("cooldown_s must be a whole number of control ticks");
    }
    if (!(hover_height > 0.0)) throw ValidationError("hover_height must be positive");
    if (!(divergence_abort_m > 0.0)) throw ValidationError("divergence_abort_m must be positive");
}

void AnalysisParams::validate() const {
    if (stft_window == 0 || (stft_window & (stft_window - 1)) != 0) {
        throw ValidationError("stft_window must be a power of two");
    }
    if (stft_hop == 0) throw ValidationError("stft_hop must be positive");
    classify.validate();
}

void RunConfig::validate() const {
    quad.validate();
    gains.validate();
    if (!(smoother_tau > 0.0)) throw ValidationError("smoother_tau must be positive");
    if (noise.position_std < 0.0 || noise.angle_std < 0.0) {
        throw ValidationError("pose noise standard deviations must be non-negative");
    }
    schedule.validate();
    acoustics.validate();
    analysis.validate();
    if (acoustics.audio_start_s > schedule.warmup_s) {
        throw ValidationError("audio_start_s would trim away the sync tone");
    }
}

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(const std::string& json_text, const std::string& origin) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("config " + origin + ": " + e.what());
    }
    if (!root.is_object()) fail(origin, "top level must be an object");
    check_keys(root, origin, {"seed", "quad", "controller", "acoustics", "analysis"});

    RunConfig cfg;
    get_u64(root, origin, "seed", cfg.seed);

    if (root.contains("quad")) {
        const Json& q = root.at("quad");
        const std::string path = origin + ".quad";
        if (!q.is_object()) fail(path, "must be an object");
        check_keys(q, path,
                   {"mass", "inertia_diag", "arm_length", "k_f", "k_tau", "omega_min",
                    "omega_max", "tau_up", "tau_down", "spin_dirs", "gravity"});
        get_double(q, path, "mass", cfg.quad.mass);
        get_vec3(q, path, "inertia_diag", cfg.quad.inertia_diag);
        get_double(q, path, "arm_length", cfg.quad.arm_length);
        get_double(q, path, "k_f", cfg.quad.k_f);
        get_double(q, path, "k_tau", cfg.quad.k_tau);
        get_double(q, path, "omega_min", cfg.quad.omega_min);
        get_double(q, path, "omega_max", cfg.quad.omega_max);
        get_double(q, path, "tau_up", cfg.quad.tau_up);
        get_double(q, path, "tau_down", cfg.quad.tau_down);
        get_spin_dirs(q, path, "spin_dirs", cfg.quad.spin_dirs);
        get_double(q, path, "gravity", cfg.quad.gravity);
    }

    if (root.contains("controller")) {
        const Json& c = root.at("controller");
        const std::string path = origin + ".controller";
        if (!c.is_object()) fail(path, "must be an object");
        check_keys(c, path,
                   {"kp_pos", "kd_pos", "kp_att", "kd_att", "yaw_torque_limit", "smoother_tau",
                    "noise_position_std", "noise_angle_std", "control_rate_hz",
                    "physics_rate_hz", "warmup_s", "gap_s", "gesture_duration_s",
                    "cooldown_s", "hover_height", "divergence_abort_m", "log_raw"});
        get_vec3(c, path, "kp_pos", cfg.gains.kp_pos);
        get_vec3(c, path, "kd_pos", cfg.gains.kd_pos);
        get_vec3(c, path, "kp_att", cfg.gains.kp_att);
        get_vec3(c, path, "kd_att", cfg.gains.kd_att);
        get_double(c, path, "yaw_torque_limit", cfg.gains.yaw_torque_limit);
        get_double(c, path, "smoother_tau", cfg.smoother_tau);
        get_double(c, path, "noise_position_std", cfg.noise.position_std);
        get_double(c, path, "noise_angle_std", cfg.noise.angle_std);
        get_double(c, path, "control_rate_hz", cfg.schedule.control_rate_hz);
        get_double(c, path, "physics_rate_hz", cfg.schedule.physics_rate_hz);
        get_double(c, path, "warmup_s", cfg.schedule.warmup_s);
        get_double(c, path, "gap_s", cfg.schedule.gap_s);
        get_double(c, path, "gesture_duration_s", cfg.schedule.gesture_duration_s);
        get_double(c, path, "cooldown_s", cfg.schedule.cooldown_s);
        get_double(c, path, "hover_height", cfg.schedule.hover_height);
        get_double(c, path, "divergence_abort_m", cfg.schedule.divergence_abort_m);
        get_bool(c, path, "log_raw", cfg.schedule.log_raw);
    }

    if (root.contains("acoustics")) {
        const Json& a = root.at("acoustics");
        const std::string path = origin + ".acoustics";
        if (!a.is_object()) fail(path, "must be an object");
        check_keys(a, path,
                   {"sample_rate", "harmonic_amps", "noise_floor", "master_gain", "tone_freq",
                    "tone_duration", "tone_amp", "tone_edge", "audio_start_s"});
        get_double(a, path, "sample_rate", cfg.acoustics.sample_rate);
        get_amps(a, path, "harmonic_amps", cfg.acoustics.harmonic_amps);
        get_double(a, path, "noise_floor", cfg.acoustics.noise_floor);
        get_double(a, path, "master_gain", cfg.acoustics.master_gain);
        get_double(a, path, "tone_freq", cfg.acoustics.tone_freq);
        get_double(a, path, "tone_duration", cfg.acoustics.tone_duration);
        get_double(a, path, "tone_amp", cfg.acoustics.tone_amp);
        get_double(a, path, "tone_edge", cfg.acoustics.tone_edge);
        get_double(a, path, "audio_start_s", cfg.acoustics.audio_start_s);
    }

    if (root.contains("analysis")) {
        const Json& a = root.at("analysis");
        const std::string path = origin + ".analysis";
        if (!a.is_object()) fail(path, "must be an object");
        check_keys(a, path,
                   {"stft_window", "stft_hop", "band_lo", "band_hi", "gest_lo", "gest_hi",
                    "second_lo", "second_hi", "voc_lo", "voc_hi", "broad_lo", "broad_hi",
                    "voc_threshold", "confidence_floor"});
        get_size(a, path, "stft_window", cfg.analysis.stft_window);
        get_size(a, path, "stft_hop", cfg.analysis.stft_hop);
        ClassifyParams& cp = cfg.analysis.classify;
        get_double(a, path, "band_lo", cp.band_lo);
        get_double(a, path, "band_hi", cp.band_hi);
        get_double(a, path, "gest_lo", cp.gest_lo);
        get_double(a, path, "gest_hi", cp.gest_hi);
        get_double(a, path, "second_lo", cp.second_lo);
        get_double(a, path, "second_hi", cp.second_hi);
        get_double(a, path, "voc_lo", cp.voc_lo);
        get_double(a, path, "voc_hi", cp.voc_hi);
        get_double(a, path, "broad_lo", cp.broad_lo);
        get_double(a, path, "broad_hi", cp.broad_hi);
        get_double(a, path, "voc_threshold", cp.voc_threshold);
        get_double(a, path, "confidence_floor", cp.confidence_floor);
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open config: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

std::string dump_config(const RunConfig& cfg) {
    Json root;
    root["seed"] = cfg.seed;

    Json q;
    q["mass"] = cfg.quad.mass;
    q["inertia_diag"] = vec3_json(cfg.quad.inertia_diag);
    q["arm_length"] = cfg.quad.arm_length;
    q["k_f"] = cfg.quad.k_f;
    q["k_tau"] = cfg.quad.k_tau;
    q["omega_min"] = cfg.quad.omega_min;
    q["omega_max"] = cfg.quad.omega_max;
    q["tau_up"] = cfg.quad.tau_up;
    q["tau_down"] = cfg.quad.tau_down;
    q["spin_dirs"] = Json::array({cfg.quad.spin_dirs[0], cfg.quad.spin_dirs[1],
                                  cfg.quad.spin_dirs[2], cfg.quad.spin_dirs[3]});
    q["gravity"] = cfg.quad.gravity;
    root["quad"] = std::move(q);

    Json c;
    c["kp_pos"] = vec3_json(cfg.gains.kp_pos);
    c["kd_pos"] = vec3_json(cfg.gains.kd_pos);
    c["kp_att"] = vec3_json(cfg.gains.kp_att);
    c["kd_att"] = vec3_json(cfg.gains.kd_att);
    c["yaw_torque_limit"] = cfg.gains.yaw_torque_limit;
    c["smoother_tau"] = cfg.smoother_tau;
    c["noise_position_std"] = cfg.noise.position_std;
    c["noise_angle_std"] = cfg.noise.angle_std;
    c["control_rate_hz"] = cfg.schedule.control_rate_hz;
    c["physics_rate_hz"] = cfg.schedule.physics_rate_hz;
    c["warmup_s"] = cfg.schedule.warmup_s;
    c["gap_s"] = cfg.schedule.gap_s;
    c["gesture_duration_s"] = cfg.schedule.gesture_duration_s;
    c["cooldown_s"] = cfg.schedule.cooldown_s;
    c["hover_height"] = cfg.schedule.hover_height;
    c["divergence_abort_m"] = cfg.schedule.divergence_abort_m;
    c["log_raw"] = cfg.schedule.log_raw;
    root["controller"] = std::move(c);

    Json a;
    a["sample_rate"] = cfg.acoustics.sample_rate;
    a["harmonic_amps"] = Json::array({cfg.acoustics.harmonic_amps[0],
                                      cfg.acoustics.harmonic_amps[1],
                                      cfg.acoustics.harmonic_amps[2]});
    a["noise_floor"] = cfg.acoustics.noise_floor;
    a["master_gain"] = cfg.acoustics.master_gain;
    a["tone_freq"] = cfg.acoustics.tone_freq;
    a["tone_duration"] = cfg.acoustics.tone_duration;
    a["tone_amp"] = cfg.acoustics.tone_amp;
    a["tone_edge"] = cfg.acoustics.tone_edge;
    a["audio_start_s"] = cfg.acoustics.audio_start_s;
    root["acoustics"] = std::move(a);

    Json an;
    an["stft_window"] = cfg.analysis.stft_window;
    an["stft_hop"] = cfg.analysis.stft_hop;
    const ClassifyParams& cp = cfg.analysis.classify;
    an["band_lo"] = cp.band_lo;
    an["band_hi"] = cp.band_hi;
    an["gest_lo"] = cp.gest_lo;
    an["gest_hi"] = cp.gest_hi;
    an["second_lo"] = cp.second_lo;
    an["second_hi"] = cp.second_hi;
    an["voc_lo"] = cp.voc_lo;
    an["voc_hi"] = cp.voc_hi;
    an["broad_lo"] = cp.broad_lo;
    an["broad_hi"] = cp.broad_hi;
    an["voc_threshold"] = cp.voc_threshold;
    an["confidence_floor"] = cp.confidence_floor;
    root["analysis"] = std::move(an);

    return root.dump(2) + "\n";
}

std::string config_hash(const RunConfig& cfg) {
    const std::string text = dump_config(cfg);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::pair<std::string, std::string>> config_header_pairs(const RunConfig& cfg) {
    const Json root = Json::parse(dump_config(cfg));
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& top : root.items()) {
        if (top.value().is_object()) {
            for (const auto& leaf : top.value().items()) {
                out.emplace_back(top.key() + "." + leaf.key(), leaf.value().dump());
            }
        } else {
            out.emplace_back(top.key(), top.value().dump());
        }
    }
    return out;
}

}  // namespace dronevoc
