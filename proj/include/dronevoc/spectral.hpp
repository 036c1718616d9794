#pragma once

#include <cstddef>
#include <vector>

#include "dronevoc/audio.hpp"

namespace dronevoc {

// Magnitude short-time Fourier transform.  Frames are Hann-windowed
// (periodic form), hop samples apart, timestamped at the frame center.
// magnitudes[frame][bin] covers bins 0..window/2 inclusive.
struct Stft {
    double sample_rate = 0.0;
    std::size_t window = 0;
    std::size_t hop = 0;
    double bin_hz = 0.0;    // sample_rate / window
    double frame_rate = 0.0;  // sample_rate / hop
    std::vector<double> times;
    std::vector<std::vector<double>> magnitudes;
};

Stft stft(const AudioBuffer& buffer, std::size_t window = 2048, std::size_t hop = 480);

// Magnitude-weighted frequency centroid and spread per frame, restricted to
// [f_lo, f_hi].  Tracks the dominant rotor line and its width without
// committing to a single peak bin.
struct RidgeTrack {
    double frame_rate = 0.0;
    std::vector<double> times;
    std::vector<double> centroid_hz;
    std::vector<double> spread_hz;
};

RidgeTrack extract_ridge(const Stft& s, double f_lo = 400.0, double f_hi = 2000.0);

// Spectrum of a slowly varying track: mean removal, linear detrend, zero-pad
// to a power of two, magnitude FFT, truncated to [0, f_max].
struct ModSpectrum {
    double df = 0.0;
    std::vector<double> freqs;
    std::vector<double> magnitude;

    // Total squared magnitude over [lo, hi] inclusive of edge bins.
    double band_energy(double lo, double hi) const;
};

ModSpectrum modulation_spectrum(const std::vector<double>& track, double frame_rate,
                                double f_max = 20.0);

}  // namespace dronevoc
