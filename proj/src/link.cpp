#include "linklab/link.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "linklab/kernels.hpp"

namespace linklab::link {
namespace {

constexpr std::uint64_t kChunkSamples = 4096;

// gamma_max for a realization already materialized in SoA form.
inline double max_snr_impl(const channel::ChannelRealization& r,
                           double gamma0) {
    const double cascade =
        kernels::env_dot(r.h1_re.data(), r.h1_im.data(), r.h2_re.data(),
                         r.h2_im.data(), r.size());
    const double g_env = std::sqrt(r.g_re * r.g_re + r.g_im * r.g_im);
    const double z = cascade + g_env;
    return gamma0 * (z * z);
}

// Per-chunk partial statistics.  Merging is associative with a fixed pairwise
// tree over chunk indices, so the reduced value depends only on (seed,
// n_samples), never on which worker computed which chunk.
struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t events = 0;
};

Partial merge(const Partial& a, const Partial& b) {
    return {a.sum + b.sum, a.sum_sq + b.sum_sq, a.events + b.events};
}

Partial reduce_pairwise(const std::vector<Partial>& parts, std::size_t lo,
                        std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(reduce_pairwise(parts, lo, mid),
                 reduce_pairwise(parts, mid, hi));
}

// Runs fn(sample_index, realization) for every sample index, chunked across
// workers, and returns the pairwise-reduced partials.
template <typename PerSample>
Partial run_chunks(const channel::LinkGeometry& geom,
                   const channel::FadingConfig& fading,
                   std::uint64_t n_samples, std::uint64_t seed, int workers,
                   PerSample&& per_sample) {
    geom.validate();
    fading.validate();
    if (n_samples < 1000)
        throw std::invalid_argument("link: n_samples must be >= 1000");

    const std::uint64_t n_chunks = (n_samples + kChunkSamples - 1) / kChunkSamples;
    std::vector<Partial> parts(n_chunks);
    std::atomic<std::uint64_t> next_chunk{0};

    auto worker_fn = [&]() {
        channel::ChannelRealization scratch;
        for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t begin = c * kChunkSamples;
            const std::uint64_t end =
                std::min(begin + kChunkSamples, n_samples);
            Partial p;
            for (std::uint64_t i = begin; i < end; ++i) {
                channel::sample_realization(geom, fading, seed, i, scratch);
                per_sample(scratch, p);
            }
            parts[c] = p;
        }
    };

    const int n_workers = resolve_workers(workers);
    if (n_workers <= 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker_fn);
        for (auto& t : pool) t.join();
    }
    return reduce_pairwise(parts, 0, parts.size());
}

} // namespace

std::vector<double> optimal_phases(const channel::ChannelRealization& r) {
    constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
    std::vector<double> theta(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        // cascade_n = h2_n * h1_n
        const double cre = r.h2_re[i] * r.h1_re[i] - r.h2_im[i] * r.h1_im[i];
        const double cim = r.h2_re[i] * r.h1_im[i] + r.h2_im[i] * r.h1_re[i];
        if ((cre == 0.0 && cim == 0.0) ||
            (r.h1_re[i] == 0.0 && r.h1_im[i] == 0.0) ||
            (r.h2_re[i] == 0.0 && r.h2_im[i] == 0.0))
            throw std::domain_error(
                "optimal_phases: zero channel coefficient (degenerate "
                "realization; resample)");
        // theta_n = arg(g) - arg(h2 h1), wrapped to [0, 2pi).  arg(g) with
        // g = 0 is taken as 0: any common rotation is optimal then.
        const double a = std::atan2(r.g_im, r.g_re) - std::atan2(cim, cre);
        double t = std::fmod(a, kTwoPi);
        if (t < 0.0) t += kTwoPi;
        if (t >= kTwoPi) t = 0.0; // fmod rounding edge
        theta[i] = t;
    }
    return theta;
}

double max_snr(const channel::ChannelRealization& r, double gamma0) {
    if (!(gamma0 > 0.0))
        throw std::invalid_argument("max_snr: gamma0 must be > 0");
    return max_snr_impl(r, gamma0);
}

int resolve_workers(int workers) {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("LINKLAB_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024)
            return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Estimate mc_ergodic_capacity(const channel::LinkGeometry& geom,
                             const channel::FadingConfig& fading,
                             const channel::RadioConfig& radio,
                             std::uint64_t n_samples, std::uint64_t seed,
                             int workers) {
    const double gamma0 = channel::transmit_snr(radio);
    constexpr double kInvLn2 = 1.4426950408889634074;
    const Partial total = run_chunks(
        geom, fading, n_samples, seed, workers,
        [&](const channel::ChannelRealization& r, Partial& p) {
            const double cap = std::log1p(max_snr_impl(r, gamma0)) * kInvLn2;
            p.sum += cap;
            p.sum_sq += cap * cap;
        });

    const double n = static_cast<double>(n_samples);
    const double mean = total.sum / n;
    const double var =
        n > 1.0 ? std::max(0.0, (total.sum_sq - total.sum * total.sum / n) /
                                    (n - 1.0))
                : 0.0;
    return Estimate{mean, 1.96 * std::sqrt(var / n), n_samples, -1, false};
}

Estimate mc_outage(const channel::LinkGeometry& geom,
                   const channel::FadingConfig& fading,
                   const channel::RadioConfig& radio, std::uint64_t n_samples,
                   std::uint64_t seed, int workers) {
    const double gamma0 = channel::transmit_snr(radio);
    const double gamma_th = channel::gamma_threshold(radio);
    const Partial total = run_chunks(
        geom, fading, n_samples, seed, workers,
        [&](const channel::ChannelRealization& r, Partial& p) {
            if (max_snr_impl(r, gamma0) <= gamma_th) ++p.events;
        });

    const double n = static_cast<double>(n_samples);
    const double p_hat = static_cast<double>(total.events) / n;
    const double hw = 1.96 * std::sqrt(p_hat * (1.0 - p_hat) / n);
    return Estimate{p_hat, hw, n_samples,
                    static_cast<std::int64_t>(total.events),
                    total.events < 10};
}

} // namespace linklab::link
