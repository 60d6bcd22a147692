#include "linklab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace linklab::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

bool cpu_has_neon() {
#if defined(__aarch64__)
    return true; // NEON is architecturally guaranteed on aarch64
#else
    return false;
#endif
}

Isa pick_default() {
    if (const char* env = std::getenv("LINKLAB_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::avx2;
        if (std::strcmp(env, "neon") == 0 && cpu_has_neon()) return Isa::neon;
        // Unknown or unavailable request: fall through to auto-detection.
    }
    if (cpu_has_avx2()) return Isa::avx2;
    if (cpu_has_neon()) return Isa::neon;
    return Isa::scalar;
}

std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{pick_default()};
    return slot;
}

} // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "?";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2: return cpu_has_avx2();
        case Isa::neon: return cpu_has_neon();
    }
    return false;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
    if (!isa_available(isa)) return false;
    active_slot().store(isa, std::memory_order_relaxed);
    return true;
}

double env_dot(const double* h1_re, const double* h1_im, const double* h2_re,
               const double* h2_im, std::size_t n) {
    switch (active_isa()) {
        case Isa::avx2: return env_dot_avx2(h1_re, h1_im, h2_re, h2_im, n);
        case Isa::neon: return env_dot_neon(h1_re, h1_im, h2_re, h2_im, n);
        case Isa::scalar: break;
    }
    return env_dot_scalar(h1_re, h1_im, h2_re, h2_im, n);
}

} // namespace linklab::kernels
