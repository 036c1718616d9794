#include "dronevoc/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "dronevoc/errors.hpp"
#include "dronevoc/fft.hpp"
#include "dronevoc/kernels.hpp"

namespace dronevoc {

Stft stft(const AudioBuffer& buffer, std::size_t window, std::size_t hop) {
    if (!Fft::is_pow2(window)) throw ValidationError("STFT window must be a power of two");
    if (hop == 0) throw ValidationError("STFT hop must be positive");
    if (buffer.sample_rate <= 0.0) throw ValidationError("audio buffer has no sample rate");
    if (buffer.samples.size() < window) {
        throw ValidationError("audio shorter than one analysis window");
    }

    Stft out;
    out.sample_rate = buffer.sample_rate;
    out.window = window;
    out.hop = hop;
    out.bin_hz = buffer.sample_rate / static_cast<double>(window);
    out.frame_rate = buffer.sample_rate / static_cast<double>(hop);

    std::vector<double> hann(window);
    for (std::size_t i = 0; i < window; ++i) {
        hann[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                        static_cast<double>(window)));
    }

    const Fft plan(window);
    const std::size_t bins = window / 2 + 1;
    const kernels::Ops& k = kernels::ops();
    std::vector<double> windowed(window);
    std::vector<std::complex<double>> spec(window);
    std::vector<double> re(bins), im(bins);

    const std::size_t n = buffer.samples.size();
    for (std::size_t start = 0; start + window <= n; start += hop) {
        k.multiply(buffer.samples.data() + start, hann.data(), windowed.data(), window);
        for (std::size_t i = 0; i < window; ++i) spec[i] = windowed[i];
        plan.forward(spec);
        for (std::size_t b = 0; b < bins; ++b) {
            re[b] = spec[b].real();
            im[b] = spec[b].imag();
        }
        std::vector<double> mag(bins);
        k.complex_magnitude(re.data(), im.data(), mag.data(), bins);
        out.times.push_back((static_cast<double>(start) + static_cast<double>(window) / 2.0) /
                            buffer.sample_rate);
        out.magnitudes.push_back(std::move(mag));
    }
    return out;
}

RidgeTrack extract_ridge(const Stft& s, double f_lo, double f_hi) {
    if (!(f_lo >= 0.0) || !(f_hi > f_lo)) {
        throw ValidationError("ridge band must satisfy 0 <= f_lo < f_hi");
    }
    const std::size_t bins = s.window / 2 + 1;
    std::size_t b_lo = static_cast<std::size_t>(std::ceil(f_lo / s.bin_hz));
    std::size_t b_hi = static_cast<std::size_t>(std::floor(f_hi / s.bin_hz));
    if (b_hi >= bins) b_hi = bins - 1;
    if (b_lo > b_hi) throw ValidationError("ridge band contains no STFT bins");

    std::vector<double> freqs(b_hi - b_lo + 1);
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        freqs[i] = static_cast<double>(b_lo + i) * s.bin_hz;
    }

    RidgeTrack out;
    out.frame_rate = s.frame_rate;
    out.times = s.times;
    out.centroid_hz.resize(s.magnitudes.size());
    out.spread_hz.resize(s.magnitudes.size());
    const kernels::Ops& k = kernels::ops();
    std::vector<double> masked(freqs.size());
    for (std::size_t fidx = 0; fidx < s.magnitudes.size(); ++fidx) {
        const double* w = s.magnitudes[fidx].data() + b_lo;
        // Keep only bins within 6 dB of the frame's in-band peak.  The band
        // also holds the weaker blade-pass overtones; without the mask they
        // bias the centroid away from the fundamental cluster and tie the
        // spread to the overtone spacing instead of the cluster width.
        double peak = 0.0;
        for (std::size_t i = 0; i < freqs.size(); ++i) peak = std::max(peak, w[i]);
        const double floor_mag = 0.5 * peak;
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            masked[i] = w[i] >= floor_mag ? w[i] : 0.0;
        }
        double m0 = 0.0, m1 = 0.0, m2 = 0.0;
        k.band_moments(masked.data(), freqs.data(), freqs.size(), &m0, &m1, &m2);
        if (m0 <= 0.0) {
            // Silent frame: park the ridge at band center with zero spread.
            out.centroid_hz[fidx] = 0.5 * (f_lo + f_hi);
            out.spread_hz[fidx] = 0.0;
            continue;
        }
        const double c = m1 / m0;
        const double var = std::max(0.0, m2 / m0 - c * c);
        out.centroid_hz[fidx] = c;
        out.spread_hz[fidx] = std::sqrt(var);
    }
    return out;
}

double ModSpectrum::band_energy(double lo, double hi) const {
    double e = 0.0;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (freqs[i] >= lo && freqs[i] <= hi) e += magnitude[i] * magnitude[i];
    }
    return e;
}

ModSpectrum modulation_spectrum(const std::vector<double>& track, double frame_rate,
                                double f_max) {
    if (track.size() < 4) throw ValidationError("modulation spectrum needs at least 4 samples");
    if (!(frame_rate > 0.0)) throw ValidationError("frame_rate must be positive");
    if (!(f_max > 0.0)) throw ValidationError("f_max must be positive");

    const std::size_t n = track.size();
    // Least-squares line through the track; removing it kills the DC and
    // drift leakage that would otherwise swamp the low modulation bins.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += track[i];
        sxx += x * x;
        sxy += x * track[i];
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    const double slope = denom != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / denom : 0.0;
    const double intercept = (sy - slope * sx) / static_cast<double>(n);

    std::size_t nfft = 1;
    while (nfft < n) nfft <<= 1;
    std::vector<std::complex<double>> spec(nfft, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        spec[i] = track[i] - (intercept + slope * static_cast<double>(i));
    }
    Fft plan(nfft);
    plan.forward(spec);

    const double df = frame_rate / static_cast<double>(nfft);
    ModSpectrum out;
    out.df = df;
    const std::size_t max_bin =
        std::min(nfft / 2, static_cast<std::size_t>(std::floor(f_max / df)));
    out.freqs.resize(max_bin + 1);
    out.magnitude.resize(max_bin + 1);
    for (std::size_t b = 0; b <= max_bin; ++b) {
        out.freqs[b] = static_cast<double>(b) * df;
        out.magnitude[b] = std::abs(spec[b]) / static_cast<double>(n);
    }
    return out;
}

}  // namespace dronevoc
