#include "dronevoc/analysis_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open for writing: " + path);
    return f;
}

void finish(std::ofstream& f, const std::string& path) {
    if (!f) throw ValidationError("write failed: " + path);
}

}  // namespace

void write_spectrogram_csv(const std::string& path, const Stft& s,
                           const std::string& config_hash) {
    std::ofstream f = open_out(path);
    if (!config_hash.empty()) f << "# config_hash: " << config_hash << "\n";
    f << "frame_time,freq,magnitude\n";
    for (std::size_t t = 0; t < s.times.size(); ++t) {
        const std::string ts = fmt(s.times[t]);
        const std::vector<double>& frame = s.magnitudes[t];
        for (std::size_t b = 0; b < frame.size(); ++b) {
            f << ts << ',' << fmt(static_cast<double>(b) * s.bin_hz) << ',' << fmt(frame[b])
              << "\n";
        }
    }
    finish(f, path);
}

void write_spectrogram_pgm(const std::string& path, const Stft& s,
                           const std::string& config_hash) {
    if (s.times.empty()) throw ValidationError("empty spectrogram");
    const std::size_t bins = s.magnitudes[0].size();
    const std::size_t frames = s.times.size();

    double peak = 0.0;
    for (const auto& frame : s.magnitudes) {
        for (double m : frame) peak = std::max(peak, m);
    }
    const double floor_db = -80.0;
    const double peak_db = peak > 0.0 ? 20.0 * std::log10(peak) : 0.0;

    std::ofstream f = open_out(path);
    f << "P5\n";
    if (!config_hash.empty()) f << "# config_hash: " << config_hash << "\n";
    f << frames << ' ' << bins << "\n255\n";
    std::vector<unsigned char> row(frames);
    for (std::size_t b = bins; b-- > 0;) {  // highest frequency first
        for (std::size_t t = 0; t < frames; ++t) {
            const double m = s.magnitudes[t][b];
            const double db = m > 0.0 ? 20.0 * std::log10(m) - peak_db : floor_db;
            const double unit = std::clamp((db - floor_db) / -floor_db, 0.0, 1.0);
            row[t] = static_cast<unsigned char>(std::lround(unit * 255.0));
        }
        f.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(frames));
    }
    finish(f, path);
}

void write_ridge_csv(const std::string& path, const RidgeTrack& ridge,
                     const std::string& config_hash) {
    std::ofstream f = open_out(path);
    if (!config_hash.empty()) f << "# config_hash: " << config_hash << "\n";
    f << "t,centroid_hz,spread_hz\n";
    for (std::size_t i = 0; i < ridge.times.size(); ++i) {
        f << fmt(ridge.times[i]) << ',' << fmt(ridge.centroid_hz[i]) << ','
          << fmt(ridge.spread_hz[i]) << "\n";
    }
    finish(f, path);
}

void write_modulation_csv(const std::string& path, const ModSpectrum& centroid,
                          const ModSpectrum& spread, const std::string& config_hash) {
    if (centroid.freqs.size() != spread.freqs.size()) {
        throw ValidationError("modulation tracks have mismatched lengths");
    }
    std::ofstream f = open_out(path);
    if (!config_hash.empty()) f << "# config_hash: " << config_hash << "\n";
    f << "freq,centroid_mag,spread_mag\n";
    for (std::size_t i = 0; i < centroid.freqs.size(); ++i) {
        f << fmt(centroid.freqs[i]) << ',' << fmt(centroid.magnitude[i]) << ','
          << fmt(spread.magnitude[i]) << "\n";
    }
    finish(f, path);
}

}  // namespace dronevoc
