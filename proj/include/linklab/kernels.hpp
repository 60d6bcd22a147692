#pragma once

// Envelope-product-sum kernel: given the component arrays of two complex
// vectors h1 and h2 of length n, compute
//
//     sum_i sqrt(h1_re[i]^2 + h1_im[i]^2) * sqrt(h2_re[i]^2 + h2_im[i]^2)
//
// which is the coherently combined cascade amplitude of the phase-aligned
// reflect link.  This is the innermost Monte Carlo operation, so it has SIMD
// variants (AVX2 on x86-64, NEON on aarch64) selected at runtime next to a
// portable scalar reference.
//
// Bit-exactness contract: every variant performs the same IEEE operations in
// the same order -- four independent accumulators striped over lanes i % 4, a
// sequential tail, and the fixed reduction (a0+a1)+(a2+a3).  No variant uses
// FMA (and the build disables FP contraction), so all variants return
// *identical bits* for identical inputs and the dispatch choice can never
// perturb a result.  Tests assert exact equality, not approximate.

#include <cstddef>

namespace linklab::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

// Kernel entry points.  Variants for ISAs not compiled into this binary
// return quiet NaN and are never selected by the dispatcher.
double env_dot_scalar(const double* h1_re, const double* h1_im,
                      const double* h2_re, const double* h2_im, std::size_t n);
double env_dot_avx2(const double* h1_re, const double* h1_im,
                    const double* h2_re, const double* h2_im, std::size_t n);
double env_dot_neon(const double* h1_re, const double* h1_im,
                    const double* h2_re, const double* h2_im, std::size_t n);

// True when the running CPU (and this binary) can execute the variant.
bool isa_available(Isa isa);

// The variant the dispatcher currently routes to.  Defaults to the best
// available ISA; the LINKLAB_SIMD environment variable ("scalar", "avx2",
// "neon") overrides the default at process start.
Isa active_isa();

// Force a specific variant (for tests / benchmarking).  Returns false and
// leaves the selection unchanged if the ISA is unavailable.
bool force_isa(Isa isa);

// Dispatched kernel call.
double env_dot(const double* h1_re, const double* h1_im, const double* h2_re,
               const double* h2_im, std::size_t n);

} // namespace linklab::kernels
