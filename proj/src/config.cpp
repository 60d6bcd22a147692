#include "linklab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace linklab::harness {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config error: line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& key, const std::string& text, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing junk");
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
        return v;
    } catch (const std::exception&) {
        fail(line, "key '" + key + "': expected a number, got '" + text + "'");
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text,
                         int line) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        fail(line, "key '" + key + "': expected a non-negative integer, got '" +
                       text + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& text,
                               int line) {
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_double(key, tok, line));
    if (out.empty()) fail(line, "key '" + key + "': empty list");
    return out;
}

struct RawEntry {
    std::string value;
    int line;
};

} // namespace

const char* sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::n: return "N";
        case SweepVariable::k: return "K";
        case SweepVariable::d1_split: return "d1_split";
        case SweepVariable::tx_power: return "tx_power";
    }
    return "?";
}

const char* output_name(Output o) {
    switch (o) {
        case Output::mc_capacity: return "mc_capacity";
        case Output::cap_bound: return "cap_bound";
        case Output::mc_outage: return "mc_outage";
        case Output::outage_clt: return "outage_clt";
        case Output::outage_high_snr: return "outage_high_snr";
    }
    return "?";
}

Config parse_config_text(const std::string& text) {
    static const char* const kKnownKeys[] = {
        "d1", "d2", "d3", "alpha1", "alpha2", "alpha3", "ref_loss_db",
        "k", "k1", "k2", "n_elements", "tx_power_dbm", "bandwidth_hz",
        "noise_psd_dbm_hz", "gamma_th_db", "rayleigh_convention",
        "sweep.variable", "sweep.values", "sweep.outputs", "samples", "seed",
    };

    std::map<std::string, RawEntry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            // '#' starts a comment, inline or full-line
            if (const auto hash = raw.find('#'); hash != std::string::npos)
                raw.erase(hash);
            const std::string line = trim(raw);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                fail(line_no, "expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(line_no, "missing key before '='");
            const bool known =
                std::any_of(std::begin(kKnownKeys), std::end(kKnownKeys),
                            [&](const char* k) { return key == k; });
            if (!known) fail(line_no, "unknown key '" + key + "'");
            if (value.empty()) fail(line_no, "key '" + key + "': empty value");
            if (entries.count(key))
                fail(line_no, "duplicate key '" + key + "' (first at line " +
                                  std::to_string(entries[key].line) + ")");
            entries[key] = {value, line_no};
        }
    }

    Config cfg; // all defaults

    auto take = [&](const char* key) -> std::optional<RawEntry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    };
    auto num = [&](const char* key, double& slot) {
        if (auto e = take(key)) slot = parse_double(key, e->value, e->line);
    };

    num("d1", cfg.geom.d1);
    num("d2", cfg.geom.d2);
    num("d3", cfg.geom.d3);
    num("alpha1", cfg.geom.alpha1);
    num("alpha2", cfg.geom.alpha2);
    num("alpha3", cfg.geom.alpha3);
    num("ref_loss_db", cfg.geom.ref_loss_db);
    num("tx_power_dbm", cfg.radio.tx_power_dbm);
    num("bandwidth_hz", cfg.radio.bandwidth_hz);
    num("noise_psd_dbm_hz", cfg.radio.noise_psd_dbm_hz);
    num("gamma_th_db", cfg.radio.gamma_th_db);

    // K factors: `k` sets both, `k1`/`k2` override individually.
    if (auto e = take("k")) {
        const double v = parse_double("k", e->value, e->line);
        cfg.fading.k1 = v;
        cfg.fading.k2 = v;
    }
    num("k1", cfg.fading.k1);
    num("k2", cfg.fading.k2);

    if (auto e = take("n_elements")) {
        const double v = parse_double("n_elements", e->value, e->line);
        if (v < 1.0 || v != std::floor(v))
            fail(e->line, "key 'n_elements': must be a positive integer");
        cfg.fading.n_elements = static_cast<int>(v);
    }
    if (auto e = take("rayleigh_convention")) {
        const std::string& v = e->value;
        if (v == "unit_power" || v == "UnitPower")
            cfg.fading.rayleigh_convention = channel::RayleighConvention::unit_power;
        else if (v == "paper_verbatim" || v == "PaperVerbatim")
            cfg.fading.rayleigh_convention = channel::RayleighConvention::paper_verbatim;
        else
            fail(e->line, "key 'rayleigh_convention': expected 'unit_power' or "
                          "'paper_verbatim', got '" + v + "'");
    }

    if (auto e = take("sweep.variable")) {
        const std::string& v = e->value;
        if (v == "N" || v == "n") cfg.sweep.variable = SweepVariable::n;
        else if (v == "K" || v == "k") cfg.sweep.variable = SweepVariable::k;
        else if (v == "d1_split") cfg.sweep.variable = SweepVariable::d1_split;
        else if (v == "tx_power") cfg.sweep.variable = SweepVariable::tx_power;
        else
            fail(e->line, "key 'sweep.variable': expected one of N, K, "
                          "d1_split, tx_power; got '" + v + "'");
    }
    if (auto e = take("sweep.values"))
        cfg.sweep.values = parse_list("sweep.values", e->value, e->line);
    if (auto e = take("sweep.outputs")) {
        std::string normalized = e->value;
        std::replace(normalized.begin(), normalized.end(), ',', ' ');
        std::istringstream in(normalized);
        std::vector<Output> outs;
        std::string tok;
        while (in >> tok) {
            if (tok == "mc_capacity") outs.push_back(Output::mc_capacity);
            else if (tok == "cap_bound") outs.push_back(Output::cap_bound);
            else if (tok == "mc_outage") outs.push_back(Output::mc_outage);
            else if (tok == "outage_clt") outs.push_back(Output::outage_clt);
            else if (tok == "outage_high_snr") outs.push_back(Output::outage_high_snr);
            else
                fail(e->line, "key 'sweep.outputs': unknown output '" + tok + "'");
        }
        if (outs.empty()) fail(e->line, "key 'sweep.outputs': empty list");
        cfg.sweep.outputs = std::move(outs);
    }
    if (auto e = take("samples"))
        cfg.sweep.n_samples = parse_uint("samples", e->value, e->line);
    if (auto e = take("seed"))
        cfg.sweep.seed = parse_uint("seed", e->value, e->line);

    // ---- semantic validation, naming the offending key ------------------
    auto check = [&](bool ok, const char* key, const std::string& constraint) {
        if (!ok) {
            const int line = take(key) ? take(key)->line : 0;
            throw ConfigError("config error: line " + std::to_string(line) +
                              ": key '" + key + "': " + constraint);
        }
    };
    check(cfg.geom.d1 > 0.0, "d1", "must be > 0");
    check(cfg.geom.d2 > 0.0, "d2", "must be > 0");
    check(cfg.geom.d3 > 0.0, "d3", "must be > 0");
    check(cfg.geom.alpha1 >= 1.0 && cfg.geom.alpha1 <= 6.0, "alpha1", "must lie in [1, 6]");
    check(cfg.geom.alpha2 >= 1.0 && cfg.geom.alpha2 <= 6.0, "alpha2", "must lie in [1, 6]");
    check(cfg.geom.alpha3 >= 1.0 && cfg.geom.alpha3 <= 6.0, "alpha3", "must lie in [1, 6]");
    check(cfg.geom.ref_loss_db <= 0.0, "ref_loss_db", "must be <= 0");
    check(cfg.fading.k1 >= 0.0, "k1", "must be >= 0");
    check(cfg.fading.k2 >= 0.0, "k2", "must be >= 0");
    check(cfg.radio.bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
    check(cfg.sweep.n_samples >= 1000, "samples", "must be >= 1000");
    check(!cfg.sweep.values.empty(), "sweep.values", "must be non-empty");
    for (std::size_t i = 1; i < cfg.sweep.values.size(); ++i)
        check(cfg.sweep.values[i] > cfg.sweep.values[i - 1], "sweep.values",
              "must be strictly increasing");
    if (cfg.sweep.variable == SweepVariable::n) {
        for (double v : cfg.sweep.values)
            check(v >= 1.0 && v == std::floor(v), "sweep.values",
                  "N values must be positive integers");
    }
    if (cfg.sweep.variable == SweepVariable::k) {
        for (double v : cfg.sweep.values)
            check(v >= 0.0, "sweep.values", "K values must be >= 0");
    }
    if (cfg.sweep.variable == SweepVariable::d1_split) {
        const double d_total = cfg.geom.d1 + cfg.geom.d2;
        for (double v : cfg.sweep.values)
            check(v > 0.0 && v < d_total, "sweep.values",
                  "d1_split values must lie strictly between 0 and d1+d2 = " +
                      std::to_string(d_total));
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path + "'");
    return parse_config_text(buf.str());
}

std::vector<std::string> resolved_config_lines(const Config& config) {
    auto fmt = [](const char* key, double v) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s = %.17g", key, v);
        return std::string(buf);
    };
    std::vector<std::string> lines;
    lines.push_back(fmt("d1", config.geom.d1));
    lines.push_back(fmt("d2", config.geom.d2));
    lines.push_back(fmt("d3", config.geom.d3));
    lines.push_back(fmt("alpha1", config.geom.alpha1));
    lines.push_back(fmt("alpha2", config.geom.alpha2));
    lines.push_back(fmt("alpha3", config.geom.alpha3));
    lines.push_back(fmt("ref_loss_db", config.geom.ref_loss_db));
    lines.push_back(fmt("k1", config.fading.k1));
    lines.push_back(fmt("k2", config.fading.k2));
    lines.push_back("n_elements = " + std::to_string(config.fading.n_elements));
    lines.push_back(std::string("rayleigh_convention = ") +
                    (config.fading.rayleigh_convention ==
                             channel::RayleighConvention::unit_power
                         ? "unit_power"
                         : "paper_verbatim"));
    lines.push_back(fmt("tx_power_dbm", config.radio.tx_power_dbm));
    lines.push_back(fmt("bandwidth_hz", config.radio.bandwidth_hz));
    lines.push_back(fmt("noise_psd_dbm_hz", config.radio.noise_psd_dbm_hz));
    lines.push_back(fmt("gamma_th_db", config.radio.gamma_th_db));
    lines.push_back(std::string("sweep.variable = ") +
                    sweep_variable_name(config.sweep.variable));
    {
        std::string vals = "sweep.values =";
        for (double v : config.sweep.values) {
            char buf[40];
            std::snprintf(buf, sizeof buf, " %.17g", v);
            vals += buf;
        }
        lines.push_back(vals);
    }
    {
        std::string outs = "sweep.outputs =";
        for (Output o : config.sweep.outputs)
            outs += std::string(" ") + output_name(o);
        lines.push_back(outs);
    }
    lines.push_back("samples = " + std::to_string(config.sweep.n_samples));
    lines.push_back("seed = " + std::to_string(config.sweep.seed));
    return lines;
}

} // namespace linklab::harness
