#pragma once

// Link-level quantities of the optimally phase-aligned IRS system and their
// parallel Monte Carlo estimators.
//
// With the IRS phases set to theta_n = arg(g / (h2_n h1_n)) every cascaded
// term co-phases with the direct path, so the received SNR reaches
//
//     gamma_max = gamma0 * ( sum_n |h2_n||h1_n| + |g| )^2.
//
// The estimators split samples into fixed chunks, run chunks on worker
// threads, and reduce partials by pairwise summation in chunk order; combined
// with per-sample RNG substreams this makes every estimate bit-identical for
// any worker count.

#include <cstdint>
#include <vector>

#include "linklab/channel.hpp"

namespace linklab::link {

// Monte Carlo point estimate with a 95% confidence half-width.
struct Estimate {
    double value = 0.0;
    double half_width_95 = 0.0;
    std::uint64_t n_samples = 0;
    // Outage estimates only: number of threshold crossings observed, and a
    // flag raised when fewer than 10 events make the half-width unreliable.
    std::int64_t n_events = -1;
    bool low_event_count = false;
};

// Optimal IRS phases for one realization, each in [0, 2pi).  Throws
// std::domain_error if any cascaded coefficient is exactly zero (degenerate
// input; samplers resample instead of defining arg(0)).
std::vector<double> optimal_phases(const channel::ChannelRealization& r);

// gamma_max for one realization under transmit SNR gamma0.
double max_snr(const channel::ChannelRealization& r, double gamma0);

// Number of worker threads to use when `workers` is 0: the LINKLAB_WORKERS
// environment variable if set, otherwise the hardware concurrency.
int resolve_workers(int workers);

// E{ log2(1 + gamma_max) } over n_samples draws.  Requires n_samples >= 1000.
Estimate mc_ergodic_capacity(const channel::LinkGeometry& geom,
                             const channel::FadingConfig& fading,
                             const channel::RadioConfig& radio,
                             std::uint64_t n_samples, std::uint64_t seed,
                             int workers = 0);

// P{ gamma_max <= gamma_th } over n_samples draws.  Requires n_samples >= 1000.
Estimate mc_outage(const channel::LinkGeometry& geom,
                   const channel::FadingConfig& fading,
                   const channel::RadioConfig& radio, std::uint64_t n_samples,
                   std::uint64_t seed, int workers = 0);

} // namespace linklab::link
