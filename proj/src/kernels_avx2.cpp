#include "linklab/kernels.hpp"

// AVX2 variant of the envelope-product-sum kernel.  Compiled with -mavx2 on
// x86-64 only; the dispatcher guarantees it is never called unless the CPU
// reports AVX2 support.  Uses mul/add/sqrt only -- no FMA -- so each vector
// lane performs exactly the scalar reference's operation sequence and the
// result is bit-identical to env_dot_scalar.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace linklab::kernels {

double env_dot_avx2(const double* h1_re, const double* h1_im,
                    const double* h2_re, const double* h2_im, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    const std::size_t nb = n & ~static_cast<std::size_t>(3);
    for (std::size_t i = 0; i < nb; i += 4) {
        const __m256d a_re = _mm256_loadu_pd(h1_re + i);
        const __m256d a_im = _mm256_loadu_pd(h1_im + i);
        const __m256d b_re = _mm256_loadu_pd(h2_re + i);
        const __m256d b_im = _mm256_loadu_pd(h2_im + i);
        const __m256d e1 = _mm256_sqrt_pd(_mm256_add_pd(
            _mm256_mul_pd(a_re, a_re), _mm256_mul_pd(a_im, a_im)));
        const __m256d e2 = _mm256_sqrt_pd(_mm256_add_pd(
            _mm256_mul_pd(b_re, b_re), _mm256_mul_pd(b_im, b_im)));
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(e1, e2));
    }
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t i = nb; i < n; ++i) {
        const double e1 =
            std::sqrt(h1_re[i] * h1_re[i] + h1_im[i] * h1_im[i]);
        const double e2 =
            std::sqrt(h2_re[i] * h2_re[i] + h2_im[i] * h2_im[i]);
        acc[i - nb] += e1 * e2;
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

} // namespace linklab::kernels

#else

#include <limits>

namespace linklab::kernels {

double env_dot_avx2(const double*, const double*, const double*,
                    const double*, std::size_t) {
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace linklab::kernels

#endif
