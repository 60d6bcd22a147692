#pragma once

// Flat key=value experiment configuration.
//
// Recognized keys: d1, d2, d3, alpha1, alpha2, alpha3, ref_loss_db, k, k1,
// k2, n_elements, tx_power_dbm, bandwidth_hz, noise_psd_dbm_hz, gamma_th_db,
// rayleigh_convention, sweep.variable, sweep.values, sweep.outputs, samples,
// seed.  Missing keys fall back to the defaults below; `k` sets both K
// factors unless k1/k2 override it.  Lines starting with '#' and blank lines
// are ignored.  Malformed lines, unknown keys, and out-of-range values raise
// ConfigError naming the key and line.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "linklab/channel.hpp"

namespace linklab::harness {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { n, k, d1_split, tx_power };
enum class Output { mc_capacity, cap_bound, mc_outage, outage_clt, outage_high_snr };

const char* sweep_variable_name(SweepVariable v);
const char* output_name(Output o);

struct SweepSpec {
    SweepVariable variable = SweepVariable::n;
    std::vector<double> values = {16.0, 32.0, 64.0}; // strictly increasing
    std::vector<Output> outputs = {Output::mc_capacity, Output::cap_bound};
    std::uint64_t n_samples = 100000; // >= 1000
    std::uint64_t seed = 1;
};

struct Config {
    channel::LinkGeometry geom;
    channel::FadingConfig fading;
    channel::RadioConfig radio;
    SweepSpec sweep;
};

// Parse a config file (or raw text).  Returns the fully resolved Config;
// throws ConfigError with key/line context, IoError if the file cannot be
// read.
Config load_config(const std::string& path);
Config parse_config_text(const std::string& text);

// The resolved configuration as "key = value" lines in canonical key order
// (used for the CSV header block).
std::vector<std::string> resolved_config_lines(const Config& config);

} // namespace linklab::harness
