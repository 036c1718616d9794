#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dronevoc/analysis_io.hpp"
#include "dronevoc/errors.hpp"
#include "dronevoc/exact_tests.hpp"
#include "dronevoc/pipeline.hpp"
#include "dronevoc/sync.hpp"
#include "dronevoc/wav.hpp"

namespace {

using namespace dronevoc;

RunConfig config_from_option(const std::string& path) {
    if (path.empty()) return default_config();
    return load_config_file(path);
}

AudioBuffer load_audio(const std::string& path) {
    const WavData wav = read_wav(path);
    AudioBuffer buf;
    buf.sample_rate = wav.sample_rate;
    buf.samples = wav.samples;
    return buf;
}

TwoByTwo parse_table(const std::string& text) {
    std::vector<long long> vals;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string cell =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            vals.push_back(std::stoll(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw ValidationError("--table expects four comma-separated integers, got '" +
                                  text + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (vals.size() != 4) {
        throw ValidationError("--table expects four comma-separated integers, got '" + text +
                              "'");
    }
    return TwoByTwo{vals[0], vals[1], vals[2], vals[3]};
}

int run_simulate(const std::string& gesture, const std::string& config_path,
                 const std::string& out_dir) {
    const RunConfig cfg = config_from_option(config_path);
    const GestureKind kind = gesture_kind_from_name(gesture);
    const SimOutputs sim = simulate_run(cfg, kind);
    write_sim_outputs(sim, cfg, kind, out_dir);
    std::printf("gesture: %s\n", gesture_kind_name(kind));
    std::printf("config_hash: %s\n", sim.hash.c_str());
    std::printf("log_rows: %zu\n", sim.log.rows.size());
    std::printf("audio_seconds: %.9g\n", sim.audio.duration());
    std::printf("out_dir: %s\n", out_dir.c_str());
    return 0;
}

int run_analyze(const std::string& wav_path, const std::string& config_path,
                const std::string& out_dir) {
    const RunConfig cfg = config_from_option(config_path);
    const AudioBuffer audio = load_audio(wav_path);
    const AnalyzeReport rep = analyze_to_dir(audio, cfg, out_dir);
    const ClassifyResult& c = rep.classification;
    std::printf("label: %s\n", gesture_label_name(c.label));
    std::printf("s_voc: %.9g\n", c.s_voc);
    std::printf("s_pos: %.9g\n", c.s_pos);
    std::printf("s_neg: %.9g\n", c.s_neg);
    std::printf("confidence: %.9g\n", c.confidence);
    std::printf("out_dir: %s\n", out_dir.c_str());
    return 0;
}

int run_stats(const std::string& table_text, int grid_points, double refine_tol,
              const std::string& csv_path) {
    const TwoByTwo table = parse_table(table_text);
    const double stat = wald_pooled(table);
    const ExactTestResult r = barnard_exact(table, grid_points, refine_tol);
    const double fisher_p = fisher_exact_two_sided(table);

    std::printf("table: [[%lld, %lld], [%lld, %lld]]\n", static_cast<long long>(table.a),
                static_cast<long long>(table.b), static_cast<long long>(table.c),
                static_cast<long long>(table.d));
    std::printf("statistic: %.9g\n", stat);
    std::printf("p_value: %.9g\n", r.p_one_sided);
    std::printf("p_two_sided: %.9g\n", r.p_two_sided);
    std::printf("nuisance_argmax: %.9g\n", r.pi_one);
    std::printf("fisher_p_two_sided: %.9g\n", fisher_p);
    std::printf("fisher_ge_p_value: %s\n", fisher_p >= r.p_one_sided ? "yes" : "no");

    if (!csv_path.empty()) {
        std::FILE* f = std::fopen(csv_path.c_str(), "wb");
        if (f == nullptr) throw ValidationError("cannot open for writing: " + csv_path);
        std::fprintf(f,
                     "a,b,c,d,statistic,p_value,p_two_sided,nuisance_argmax,"
                     "fisher_p_two_sided\n");
        std::fprintf(f, "%lld,%lld,%lld,%lld,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                     static_cast<long long>(table.a), static_cast<long long>(table.b),
                     static_cast<long long>(table.c), static_cast<long long>(table.d), stat,
                     r.p_one_sided, r.p_two_sided, r.pi_one, fisher_p);
        std::fclose(f);
    }
    return 0;
}

int run_sync(const std::string& wav_path, const std::string& log_path,
             const std::string& config_path) {
    const RunConfig cfg = config_from_option(config_path);
    const AudioBuffer audio = load_audio(wav_path);
    const FlightLog log = read_flight_log(log_path);

    double gap_s = cfg.schedule.gap_s;
    const std::string header_gap = log.header_value("controller.gap_s");
    if (!header_gap.empty()) gap_s = std::stod(header_gap);

    const AlignResult align = align_log(audio, cfg.acoustics, log, gap_s);
    std::printf("tone_onset_s: %.9g\n", align.tone_onset_s);
    std::printf("gesture_audio_s: %.9g\n", align.gesture_audio_s);
    std::printf("switch_log_s: %.9g\n", align.switch_log_s);
    std::printf("offset_s: %.9g\n", align.offset_s);
    const std::string recorded = log.header_value("audio_offset_s");
    if (!recorded.empty()) std::printf("recorded_offset_s: %s\n", recorded.c_str());
    return 0;
}

int run_experiment_cmd(const std::string& config_path, const std::string& out_dir) {
    const RunConfig cfg = config_from_option(config_path);
    const ExperimentSummary sum = run_experiment(cfg, out_dir);
    std::fputs(summary_json(sum).c_str(), stdout);
    return 0;
}

int run_spectrogram(const std::string& wav_path, const std::string& pgm_path,
                    const std::string& csv_path, const std::string& config_path) {
    const RunConfig cfg = config_from_option(config_path);
    const AudioBuffer audio = load_audio(wav_path);
    const Stft s = stft(audio, cfg.analysis.stft_window, cfg.analysis.stft_hop);
    write_spectrogram_pgm(pgm_path, s, "");
    std::printf("pgm: %s\n", pgm_path.c_str());
    if (!csv_path.empty()) {
        write_spectrogram_csv(csv_path, s, "");
        std::printf("csv: %s\n", csv_path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadrotor gesture simulation, rotor-sound synthesis, and analysis"};
    app.require_subcommand(1);

    std::string gesture, config_path, out_dir, wav_path, log_path, pgm_path, csv_path;
    std::string table_text;
    int grid_points = 1001;
    double refine_tol = 1e-6;

    CLI::App* sim = app.add_subcommand("simulate", "Fly one gesture and record log + audio");
    sim->add_option("--gesture", gesture, "nod | shake | vocalics")->required();
    sim->add_option("--config", config_path, "JSON config file (defaults when omitted)");
    sim->add_option("--out", out_dir, "output directory")->required();

    CLI::App* ana = app.add_subcommand("analyze", "Spectral analysis + classification of a WAV");
    ana->add_option("--wav", wav_path, "input WAV file")->required();
    ana->add_option("--config", config_path, "JSON config file");
    ana->add_option("--out", out_dir, "output directory")->default_val(".");

    CLI::App* st = app.add_subcommand("stats", "Exact tests on a 2x2 table");
    st->add_option("--table", table_text, "a,b,c,d counts")->required();
    st->add_option("--grid", grid_points, "nuisance grid points")->default_val(1001);
    st->add_option("--refine-tol", refine_tol, "refinement tolerance")->default_val(1e-6);
    st->add_option("--csv", csv_path, "also write a CSV report here");

    CLI::App* sy = app.add_subcommand("sync", "Align a WAV with a flight log");
    sy->add_option("--wav", wav_path, "input WAV file")->required();
    sy->add_option("--log", log_path, "flight log CSV")->required();
    sy->add_option("--config", config_path, "JSON config file");

    CLI::App* ex = app.add_subcommand("experiment", "Run all three gestures and summarize");
    ex->add_option("--config", config_path, "JSON config file");
    ex->add_option("--out", out_dir, "output directory")->required();

    CLI::App* sp = app.add_subcommand("spectrogram", "Render a WAV to a PGM spectrogram");
    sp->add_option("--wav", wav_path, "input WAV file")->required();
    sp->add_option("--pgm", pgm_path, "output PGM image")->required();
    sp->add_option("--csv", csv_path, "also write the spectrogram CSV here");
    sp->add_option("--config", config_path, "JSON config file");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return run_simulate(gesture, config_path, out_dir);
        if (ana->parsed()) return run_analyze(wav_path, config_path, out_dir);
        if (st->parsed()) return run_stats(table_text, grid_points, refine_tol, csv_path);
        if (sy->parsed()) return run_sync(wav_path, log_path, config_path);
        if (ex->parsed()) return run_experiment_cmd(config_path, out_dir);
        if (sp->parsed()) return run_spectrogram(wav_path, pgm_path, csv_path, config_path);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad arguments are validation errors
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
