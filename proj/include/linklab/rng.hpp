#pragma once

// Deterministic random number generation for the Monte Carlo estimators.
//
// Reproducibility contract: every Monte Carlo sample with global index i under
// master seed s draws from its own substream derived purely from (s, i).  The
// estimate is therefore a function of (s, n_samples) alone -- how samples are
// partitioned across worker threads cannot change a single drawn bit.
//
// Within one sample the draw order is fixed (direct link first, then IRS
// elements 0..N-1), so enlarging N extends a sample's draw sequence without
// disturbing its prefix: runs at different N share their common randomness.

#include <cmath>
#include <cstdint>

namespace linklab::rng {

// SplitMix64 step (Vigna's mixer); used for seeding and stream derivation.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t v) { return splitmix64_next(v); }

// xoshiro256++ engine (Blackman & Vigna).  Plenty of state for per-sample
// substreams; initialized via SplitMix64 as its authors recommend.
class Xoshiro256pp {
  public:
    Xoshiro256pp() : s_{1, 2, 3, 4} {}

    static Xoshiro256pp from_state(std::uint64_t sm_state) {
        Xoshiro256pp g;
        g.s_[0] = splitmix64_next(sm_state);
        g.s_[1] = splitmix64_next(sm_state);
        g.s_[2] = splitmix64_next(sm_state);
        g.s_[3] = splitmix64_next(sm_state);
        if ((g.s_[0] | g.s_[1] | g.s_[2] | g.s_[3]) == 0) g.s_[0] = 1;
        return g;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Substream for Monte Carlo sample `sample_index` under `master_seed`.
// Distinct (seed, index) pairs are separated by hashing each through
// SplitMix64 independently before combining.
inline Xoshiro256pp sample_stream(std::uint64_t master_seed,
                                  std::uint64_t sample_index) {
    const std::uint64_t a = mix64(master_seed);
    const std::uint64_t b = mix64(sample_index ^ 0xD2B74407B1CE6E93ULL);
    return Xoshiro256pp::from_state(a ^ b);
}

// Pair of independent standard normals via the Marsaglia polar method.
struct NormalPair {
    double z0, z1;
};

inline NormalPair draw_normal_pair(Xoshiro256pp& g) {
    for (;;) {
        const double u = 2.0 * g.uniform01() - 1.0;
        const double v = 2.0 * g.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        return {u * f, v * f};
    }
}

} // namespace linklab::rng
