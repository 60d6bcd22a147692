#pragma once

// Experiment sweeps: one Monte Carlo / closed-form evaluation per sweep value,
// emitted as a self-describing CSV.
//
// Sweep semantics per variable:
//   N        -- fading.n_elements = value (positive integer)
//   K        -- fading.k1 = fading.k2 = value
//   d1_split -- geom.d1 = value, geom.d2 = d_total - value, where d_total is
//               the configured d1 + d2 (IRS slides along the line)
//   tx_power -- radio.tx_power_dbm = value
//
// Every row reuses the same master seed, so rows at different sweep values
// share common randomness and any rerun with the same seed is byte-identical
// in the CSV, independent of worker count.

#include <string>
#include <vector>

#include "linklab/config.hpp"
#include "linklab/link.hpp"

namespace linklab::harness {

struct ResultRow {
    double sweep_value = 0.0;
    // Parallel to SweepSpec::outputs; half-width 0 for closed-form outputs.
    std::vector<double> values;
    std::vector<double> half_widths;
};

struct SweepResult {
    std::vector<Output> outputs;
    std::vector<ResultRow> rows;
};

// Run the sweep described by config.sweep.  `workers` <= 0 resolves through
// LINKLAB_WORKERS / hardware concurrency (purely a throughput knob: results
// are bit-identical for any worker count).
SweepResult run_sweep(const Config& config, int workers = 0);

// Write rows as CSV: '#' header lines carrying the resolved config, then
// `sweep_value,<output>,<output>_hw,...`.  Atomic: written to a temp file in
// the target directory and renamed into place; throws IoError on failure.
void write_csv(const SweepResult& result, const Config& config,
               const std::string& path);

// Same, but the CSV text as a string (used by tests and write_csv itself).
std::string csv_text(const SweepResult& result, const Config& config);

} // namespace linklab::harness
