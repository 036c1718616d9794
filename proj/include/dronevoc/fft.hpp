#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dronevoc {

// Iterative radix-2 DIT FFT for power-of-two sizes. A plan precomputes the
// bit-reversal permutation and twiddle tables once; transforms are then
// allocation-free and evaluate in a fixed order (deterministic results).
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    // In-place forward DFT: X[k] = sum_j x[j] * exp(-2*pi*i*j*k/n).
    void forward(std::vector<std::complex<double>>& x) const;

    static bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

private:
    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;  // concatenated per-stage tables
    std::vector<std::size_t> stage_offset_;
};

}  // namespace dronevoc
