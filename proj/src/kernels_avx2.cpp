#include "kernels_internal.hpp"

// AVX2 variants. Built with -mavx2 -mfma -ffp-contract=off: contraction off so
// that multiply/complex_magnitude stay bit-identical to the scalar reference;
// FMA is used only where written explicitly. Callers guarantee the cpuid check
// before any of these run.

#ifdef DRONEVOC_COMPILE_AVX2

#include <immintrin.h>

#include <cmath>

namespace dronevoc::kernels {

namespace {

void multiply_avx2(const double* a, const double* b, double* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void complex_magnitude_avx2(const double* re, const double* im, double* dst, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vr = _mm256_loadu_pd(re + i);
        __m256d vi = _mm256_loadu_pd(im + i);
        __m256d sum = _mm256_add_pd(_mm256_mul_pd(vr, vr), _mm256_mul_pd(vi, vi));
        _mm256_storeu_pd(dst + i, _mm256_sqrt_pd(sum));
    }
    for (; i < n; ++i) dst[i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
}

// Lanes are reduced in a fixed order so results are deterministic per backend.
double reduce4(__m256d v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return ((lane[0] + lane[1]) + lane[2]) + lane[3];
}

double sum_squares_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double total = reduce4(acc);
    for (; i < n; ++i) total += x[i] * x[i];
    return total;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double total = reduce4(acc);
    for (; i < n; ++i) total += a[i] * b[i];
    return total;
}

// sin(phase) for phase in [0, 2*pi): quadrant reduction to [-pi/4, pi/4], then
// Taylor polynomials (sin through r^15, cos through r^16; max error ~1e-16 on
// the reduced range, a few ulp against libm overall).
__m256d sin_0_2pi(__m256d phase) {
    const __m256d two_over_pi = _mm256_set1_pd(2.0 / 3.14159265358979323846);
    const __m256d pio2_hi = _mm256_set1_pd(1.5707963267948966);
    const __m256d pio2_lo = _mm256_set1_pd(6.123233995736766e-17);

    __m256d j = _mm256_round_pd(_mm256_mul_pd(phase, two_over_pi),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(j, pio2_hi, phase);
    r = _mm256_fnmadd_pd(j, pio2_lo, r);

    // quadrant j mod 4 (j is in {0..4} for phase < 2*pi)
    __m256d wrap = _mm256_cmp_pd(j, _mm256_set1_pd(3.5), _CMP_GT_OQ);
    __m256d q = _mm256_sub_pd(j, _mm256_and_pd(wrap, _mm256_set1_pd(4.0)));

    __m256d s = _mm256_mul_pd(r, r);

    __m256d ps = _mm256_set1_pd(-1.0 / 1307674368000.0);  // -1/15!
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(1.0 / 6227020800.0));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(-1.0 / 39916800.0));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(1.0 / 362880.0));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(-1.0 / 5040.0));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(1.0 / 120.0));
    ps = _mm256_fmadd_pd(ps, s, _mm256_set1_pd(-1.0 / 6.0));
    __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(ps, s), r, r);

    __m256d pc = _mm256_set1_pd(1.0 / 20922789888000.0);  // 1/16!
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(-1.0 / 87178291200.0));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(1.0 / 479001600.0));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(-1.0 / 3628800.0));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(1.0 / 40320.0));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(-1.0 / 720.0));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(1.0 / 24.0));
    pc = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(-0.5));
    __m256d cos_r = _mm256_fmadd_pd(pc, s, _mm256_set1_pd(1.0));

    __m256d odd = _mm256_or_pd(_mm256_cmp_pd(q, _mm256_set1_pd(1.0), _CMP_EQ_OQ),
                               _mm256_cmp_pd(q, _mm256_set1_pd(3.0), _CMP_EQ_OQ));
    __m256d result = _mm256_blendv_pd(sin_r, cos_r, odd);
    __m256d negate = _mm256_and_pd(_mm256_cmp_pd(q, _mm256_set1_pd(1.5), _CMP_GT_OQ),
                                   _mm256_set1_pd(-0.0));
    return _mm256_xor_pd(result, negate);
}

void add_scaled_sin_avx2(const double* phase, double amp, double* dst, std::size_t n) {
    const __m256d vamp = _mm256_set1_pd(amp);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_loadu_pd(phase + i);
        __m256d d = _mm256_loadu_pd(dst + i);
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(vamp, sin_0_2pi(p), d));
    }
    for (; i < n; ++i) dst[i] += amp * std::sin(phase[i]);
}

void band_moments_avx2(const double* w, const double* f, std::size_t n,
                       double* m0, double* m1, double* m2) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    __m256d a2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vw = _mm256_loadu_pd(w + i);
        __m256d vf = _mm256_loadu_pd(f + i);
        __m256d wf = _mm256_mul_pd(vw, vf);
        a0 = _mm256_add_pd(a0, vw);
        a1 = _mm256_add_pd(a1, wf);
        a2 = _mm256_fmadd_pd(wf, vf, a2);
    }
    double s0 = reduce4(a0), s1 = reduce4(a1), s2 = reduce4(a2);
    for (; i < n; ++i) {
        s0 += w[i];
        s1 += w[i] * f[i];
        s2 += w[i] * f[i] * f[i];
    }
    *m0 = s0;
    *m1 = s1;
    *m2 = s2;
}

}  // namespace

const Ops* avx2_ops() {
    static const Ops table{
        Backend::avx2,
        multiply_avx2,
        complex_magnitude_avx2,
        sum_squares_avx2,
        dot_avx2,
        add_scaled_sin_avx2,
        band_moments_avx2,
    };
    return &table;
}

}  // namespace dronevoc::kernels

#else

namespace dronevoc::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace dronevoc::kernels

#endif
