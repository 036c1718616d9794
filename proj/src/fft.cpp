#include "dronevoc/fft.hpp"

#include <numbers>

#include "dronevoc/errors.hpp"

namespace dronevoc {

Fft::Fft(std::size_t n) : n_(n) {
    if (!is_pow2(n)) throw ValidationError("fft size must be a power of two, got " + std::to_string(n));

    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        bitrev_[i] = r;
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        stage_offset_.push_back(twiddle_.size());
        for (std::size_t k = 0; k < len / 2; ++k) {
            double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
            twiddle_.push_back(std::polar(1.0, ang));
        }
    }
}

void Fft::forward(std::vector<std::complex<double>>& x) const {
    if (x.size() != n_) throw ValidationError("fft input length mismatch");

    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t j = bitrev_[i];
        if (i < j) std::swap(x[i], x[j]);
    }

    std::size_t stage = 0;
    for (std::size_t len = 2; len <= n_; len <<= 1, ++stage) {
        const std::complex<double>* w = twiddle_.data() + stage_offset_[stage];
        const std::size_t half = len / 2;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                std::complex<double> even = x[start + k];
                std::complex<double> odd = x[start + k + half] * w[k];
                x[start + k] = even + odd;
                x[start + k + half] = even - odd;
            }
        }
    }
}

}  // namespace dronevoc
