#include "linklab/kernels.hpp"

#include <cmath>

namespace linklab::kernels {

// Reference implementation.  The accumulation pattern (four striped
// accumulators, sequential tail, fixed reduction tree) is the contract every
// SIMD variant reproduces operation-for-operation; see kernels.hpp.
double env_dot_scalar(const double* h1_re, const double* h1_im,
                      const double* h2_re, const double* h2_im,
                      std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t nb = n & ~static_cast<std::size_t>(3);
    for (std::size_t i = 0; i < nb; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double e1 = std::sqrt(h1_re[i + j] * h1_re[i + j] +
                                        h1_im[i + j] * h1_im[i + j]);
            const double e2 = std::sqrt(h2_re[i + j] * h2_re[i + j] +
                                        h2_im[i + j] * h2_im[i + j]);
            acc[j] += e1 * e2;
        }
    }
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
