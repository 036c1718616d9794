#include "dronevoc/kernels.hpp"

#include <cmath>

// Reference kernels. Straight loops, fixed evaluation order; every other
// backend is tested against these.

namespace dronevoc::kernels {

namespace {

void multiply_scalar(const double* a, const double* b, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void complex_magnitude_scalar(const double* re, const double* im, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

double sum_squares_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void add_scaled_sin_scalar(const double* phase, double amp, double* dst, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += amp * std::sin(phase[i]);
}

void band_moments_scalar(const double* w, const double* f, std::size_t n,
                         double* m0, double* m1, double* m2) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s0 += w[i];
        s1 += w[i] * f[i];
        s2 += w[i] * f[i] * f[i];
    }
    *m0 = s0;
    *m1 = s1;
    *m2 = s2;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops table{
        Backend::scalar,
        multiply_scalar,
        complex_magnitude_scalar,
        sum_squares_scalar,
        dot_scalar,
        add_scaled_sin_scalar,
        band_moments_scalar,
    };
    return table;
}

}  // namespace dronevoc::kernels
