#pragma once

#include <string>

#include "dronevoc/spectral.hpp"

namespace dronevoc {

// Long-form export, one `frame_time,freq,magnitude` row per STFT cell.
void write_spectrogram_csv(const std::string& path, const Stft& s,
                           const std::string& config_hash);

// Binary 8-bit PGM: log magnitude over an 80 dB floor below the peak,
// rows are frequency bins from Nyquist down, columns are frames.
void write_spectrogram_pgm(const std::string& path, const Stft& s,
                           const std::string& config_hash);

void write_ridge_csv(const std::string& path, const RidgeTrack& ridge,
                     const std::string& config_hash);

// Both modulation tracks on a shared frequency axis:
// `freq,centroid_mag,spread_mag`.
void write_modulation_csv(const std::string& path, const ModSpectrum& centroid,
                          const ModSpectrum& spread, const std::string& config_hash);

}  // namespace dronevoc
