#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace dronevoc::kernels {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

// Flat-array primitives behind the DSP hot loops. Scalar versions are the
// reference semantics; SIMD variants must match them within documented
// tolerances (bit-exact for elementwise ops, reassociation-level for sums).
struct Ops {
    Backend backend;

    // dst[i] = a[i] * b[i]
    void (*multiply)(const double* a, const double* b, double* dst, std::size_t n);
    // dst[i] = sqrt(re[i]^2 + im[i]^2)
    void (*complex_magnitude)(const double* re, const double* im, double* dst, std::size_t n);
    // sum of x[i]^2
    double (*sum_squares)(const double* x, std::size_t n);
    // sum of a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // dst[i] += amp * sin(phase[i]); phases must lie in [0, 2*pi)
    void (*add_scaled_sin)(const double* phase, double amp, double* dst, std::size_t n);
    // moments over a band: m0 = sum w, m1 = sum w*f, m2 = sum w*f^2
    void (*band_moments)(const double* w, const double* f, std::size_t n,
                         double* m0, double* m1, double* m2);
};

bool available(Backend b);
std::vector<Backend> available_backends();

// Active table: best available backend unless overridden by force_backend()
// or the DRONEVOC_KERNELS environment variable (scalar|avx2), read once.
const Ops& ops();
const Ops& ops(Backend b);
void force_backend(std::optional<Backend> b);

}  // namespace dronevoc::kernels
