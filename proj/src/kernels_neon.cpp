#include "linklab/kernels.hpp"

// NEON variant of the envelope-product-sum kernel (aarch64, where NEON is
// baseline).  Two 2-lane vectors stand in for the four striped accumulators;
// lane arithmetic is mul/add/sqrt only (vsqrtq_f64 is IEEE correctly
// rounded), so results are bit-identical to env_dot_scalar.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace linklab::kernels {

double env_dot_neon(const double* h1_re, const double* h1_im,
                    const double* h2_re, const double* h2_im, std::size_t n) {
    float64x2_t vacc01 = vdupq_n_f64(0.0); // accumulators 0, 1
    float64x2_t vacc23 = vdupq_n_f64(0.0); // accumulators 2, 3
    const std::size_t nb = n & ~static_cast<std::size_t>(3);
    for (std::size_t i = 0; i < nb; i += 4) {
        const float64x2_t a_re0 = vld1q_f64(h1_re + i);
        const float64x2_t a_im0 = vld1q_f64(h1_im + i);
        const float64x2_t b_re0 = vld1q_f64(h2_re + i);
        const float64x2_t b_im0 = vld1q_f64(h2_im + i);
        const float64x2_t a_re1 = vld1q_f64(h1_re + i + 2);
        const float64x2_t a_im1 = vld1q_f64(h1_im + i + 2);
        const float64x2_t b_re1 = vld1q_f64(h2_re + i + 2);
        const float64x2_t b_im1 = vld1q_f64(h2_im + i + 2);
        const float64x2_t e1_0 = vsqrtq_f64(
            vaddq_f64(vmulq_f64(a_re0, a_re0), vmulq_f64(a_im0, a_im0)));
        const float64x2_t e2_0 = vsqrtq_f64(
            vaddq_f64(vmulq_f64(b_re0, b_re0), vmulq_f64(b_im0, b_im0)));
        const float64x2_t e1_1 = vsqrtq_f64(
            vaddq_f64(vmulq_f64(a_re1, a_re1), vmulq_f64(a_im1, a_im1)));
        const float64x2_t e2_1 = vsqrtq_f64(
            vaddq_f64(vmulq_f64(b_re1, b_re1), vmulq_f64(b_im1, b_im1)));
        vacc01 = vaddq_f64(vacc01, vmulq_f64(e1_0, e2_0));
        vacc23 = vaddq_f64(vacc23, vmulq_f64(e1_1, e2_1));
    }
    double acc[4];
    vst1q_f64(acc + 0, vacc01);
    vst1q_f64(acc + 2, vacc23);
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

double env_dot_neon(const double*, const double*, const double*, const double*,
                    std::size_t) {
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace linklab::kernels

#endif
