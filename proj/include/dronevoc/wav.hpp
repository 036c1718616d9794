#pragma once

#include <string>

#include "dronevoc/audio.hpp"

namespace dronevoc {

struct WavData {
    double sample_rate = 0.0;
    std::vector<double> samples;  // decoded to [-1, 1)
    std::string config_hash;      // empty when the file carries none
};

// 16-bit PCM mono little-endian RIFF/WAVE.  Samples are clamped to [-1, 1]
// and rounded to the nearest code.  config_hash, when non-empty, is stored in
// a LIST/INFO comment chunk so an audio file can be traced to the exact
// configuration that produced it.
void write_wav(const std::string& path, const AudioBuffer& buffer,
               const std::string& config_hash);

// Reads files produced by write_wav and any other 16-bit PCM mono WAV;
// unrecognized chunks are skipped.  Throws ValidationError on malformed or
// unsupported files.
WavData read_wav(const std::string& path);

}  // namespace dronevoc
