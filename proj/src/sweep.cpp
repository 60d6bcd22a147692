#include "linklab/sweep.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "linklab/analytic.hpp"
#include "linklab/link.hpp"

namespace linklab::harness {
namespace {

// Returns the (geometry, fading, radio) triple for one sweep point: the
// configured baseline with the swept variable substituted.
struct Point {
    channel::LinkGeometry geom;
    channel::FadingConfig fading;
    channel::RadioConfig radio;
};

Point materialize(const Config& config, double value) {
    Point p{config.geom, config.fading, config.radio};
    switch (config.sweep.variable) {
        case SweepVariable::n:
            p.fading.n_elements = static_cast<int>(value);
            break;
        case SweepVariable::k:
            p.fading.k1 = value;
            p.fading.k2 = value;
            break;
        case SweepVariable::d1_split: {
            // Total reflector path length is fixed by the configured baseline;
            // the swept value repositions the reflector along it.
            const double d_total = config.geom.d1 + config.geom.d2;
            p.geom.d1 = value;
            p.geom.d2 = d_total - value;
            break;
        }
        case SweepVariable::tx_power:
            p.radio.tx_power_dbm = value;
            break;
    }
    return p;
}

} // namespace

SweepResult run_sweep(const Config& config, int workers) {
    SweepResult result;
    result.outputs = config.sweep.outputs;
    result.rows.reserve(config.sweep.values.size());
    const auto convention = config.fading.rayleigh_convention;
    for (double value : config.sweep.values) {
        const Point p = materialize(config, value);
        p.geom.validate();
        p.fading.validate();
        p.radio.validate();
        ResultRow row;
        row.sweep_value = value;
        for (Output out : config.sweep.outputs) {
            double v = 0.0;
            double hw = 0.0;
            switch (out) {
                case Output::mc_capacity: {
                    // Every row reuses the master seed: sample i sees the same
                    // underlying draws at each sweep point, so adjacent rows
                    // differ by the physics, not by noise (common random
                    // numbers).
                    const link::Estimate e = link::mc_ergodic_capacity(
                        p.geom, p.fading, p.radio, config.sweep.n_samples,
                        config.sweep.seed, workers);
                    v = e.value;
                    hw = e.half_width_95;
                    break;
                }
                case Output::mc_outage: {
                    const link::Estimate e =
                        link::mc_outage(p.geom, p.fading, p.radio,
                                        config.sweep.n_samples,
                                        config.sweep.seed, workers);
                    v = e.value;
                    hw = e.half_width_95;
                    break;
                }
                case Output::cap_bound:
                    v = analytic::capacity_upper_bound(p.geom, p.fading,
                                                       p.radio, convention);
                    break;
                case Output::outage_clt:
                    v = analytic::outage_clt(p.geom, p.fading, p.radio,
                                             convention);
                    break;
                case Output::outage_high_snr:
                    v = analytic::outage_high_snr(p.geom, p.fading, p.radio);
                    break;
            }
            row.values.push_back(v);
            row.half_widths.push_back(hw);
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string csv_text(const SweepResult& result, const Config& config) {
    std::string out;
    // Header: the fully resolved configuration, so a result file is
    // self-describing and reproducible. Deliberately excludes anything about
    // the execution environment (worker count, host) — the same sweep must
    // produce byte-identical files regardless of how it was parallelized.
    for (const std::string& line : resolved_config_lines(config)) {
        out += "# ";
        out += line;
        out += '\n';
    }
    out += "sweep_value";
    for (Output o : result.outputs) {
        out += ',';
        out += output_name(o);
        out += ',';
        out += output_name(o);
        out += "_hw";
    }
    out += '\n';
    char buf[40];
    for (const ResultRow& row : result.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.sweep_value);
        out += buf;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            std::snprintf(buf, sizeof buf, ",%.17g", row.values[i]);
            out += buf;
            std::snprintf(buf, sizeof buf, ",%.17g", row.half_widths[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_csv(const SweepResult& result, const Config& config,
               const std::string& path) {
    const std::string text = csv_text(result, config);
    // Write-then-rename so readers never observe a half-written file.
    const std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f)
        throw IoError("cannot open '" + tmp + "' for writing: " +
                      std::strerror(errno));
    const std::size_t written = std::fwrite(text.data(), 1, text.size(), f);
    const bool flush_ok = std::fflush(f) == 0;
    const bool close_ok = std::fclose(f) == 0;
    if (written != text.size() || !flush_ok || !close_ok) {
        std::remove(tmp.c_str());
        throw IoError("error writing '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const std::string why = std::strerror(errno);
        std::remove(tmp.c_str());
        throw IoError("cannot rename '" + tmp + "' to '" + path + "': " + why);
    }
}

} // namespace linklab::harness
