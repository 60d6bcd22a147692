#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "linklab/analytic.hpp"
#include "linklab/config.hpp"
#include "linklab/sweep.hpp"

using namespace linklab;
using harness::Config;
using harness::ConfigError;
using harness::Output;
using harness::SweepVariable;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("parse_config_text: empty input yields the documented defaults") {
    const Config cfg = harness::parse_config_text("");
    CHECK(cfg.geom.d1 == 150.0);
    CHECK(cfg.geom.d2 == 150.0);
    CHECK(cfg.geom.d3 == 200.0);
    CHECK(cfg.geom.alpha1 == 2.0);
    CHECK(cfg.geom.alpha3 == 3.5);
    CHECK(cfg.geom.ref_loss_db == -30.0);
    CHECK(cfg.fading.k1 == 1.0);
    CHECK(cfg.fading.k2 == 1.0);
    CHECK(cfg.fading.n_elements == 32);
    CHECK(cfg.fading.rayleigh_convention ==
          channel::RayleighConvention::unit_power);
    CHECK(cfg.radio.tx_power_dbm == 30.0);
    CHECK(cfg.radio.bandwidth_hz == 180e3);
    CHECK(cfg.radio.noise_psd_dbm_hz == -173.0);
    CHECK(cfg.radio.gamma_th_db == 10.0);
    CHECK(cfg.sweep.variable == SweepVariable::n);
    CHECK(cfg.sweep.values == std::vector<double>{16.0, 32.0, 64.0});
    CHECK(cfg.sweep.outputs ==
          std::vector<Output>{Output::mc_capacity, Output::cap_bound});
    CHECK(cfg.sweep.n_samples == 100000);
    CHECK(cfg.sweep.seed == 1);
}

TEST_CASE("parse_config_text: full explicit configuration") {
    const Config cfg = harness::parse_config_text(R"(
# scenario: short-range indoor test
d1 = 20
d2 = 35.5
d3 = 40
alpha1 = 2.2
alpha2 = 2.4
alpha3 = 3.0
ref_loss_db = -28

k1 = 0.5
k2 = 3
n_elements = 64
rayleigh_convention = paper_verbatim

tx_power_dbm = 17
bandwidth_hz = 1e6
noise_psd_dbm_hz = -170
gamma_th_db = 6

sweep.variable = tx_power
sweep.values = -10, 0, 10, 20
sweep.outputs = mc_outage outage_clt outage_high_snr
samples = 5000
seed = 99
)");
    CHECK(cfg.geom.d2 == 35.5);
    CHECK(cfg.geom.alpha2 == 2.4);
    CHECK(cfg.fading.k1 == 0.5);
    CHECK(cfg.fading.k2 == 3.0);
    CHECK(cfg.fading.n_elements == 64);
    CHECK(cfg.fading.rayleigh_convention ==
          channel::RayleighConvention::paper_verbatim);
    CHECK(cfg.radio.bandwidth_hz == 1e6);
    CHECK(cfg.sweep.variable == SweepVariable::tx_power);
    CHECK(cfg.sweep.values == std::vector<double>{-10.0, 0.0, 10.0, 20.0});
    CHECK(cfg.sweep.outputs ==
          std::vector<Output>{Output::mc_outage, Output::outage_clt,
                              Output::outage_high_snr});
    CHECK(cfg.sweep.n_samples == 5000);
    CHECK(cfg.sweep.seed == 99);
}

TEST_CASE("parse_config_text: shared k with per-hop overrides") {
    SUBCASE("k alone sets both hops") {
        const Config cfg = harness::parse_config_text("k = 2.5\n");
        CHECK(cfg.fading.k1 == 2.5);
        CHECK(cfg.fading.k2 == 2.5);
    }
    SUBCASE("k1/k2 refine a shared k") {
        const Config cfg = harness::parse_config_text("k = 2.5\nk1 = 0.25\n");
        CHECK(cfg.fading.k1 == 0.25);
        CHECK(cfg.fading.k2 == 2.5);
    }
    SUBCASE("order in the file does not matter") {
        const Config cfg = harness::parse_config_text("k1 = 0.25\nk = 2.5\n");
        CHECK(cfg.fading.k1 == 0.25);
        CHECK(cfg.fading.k2 == 2.5);
    }
}

TEST_CASE("parse_config_text: inline comments are stripped") {
    const Config cfg = harness::parse_config_text(
        "d1 = 120   # transmitter -> surface\n"
        "  # full-line comment\n"
        "sweep.values = 1, 2, 3 # list with trailing note\n"
        "#k = 9\n");
    CHECK(cfg.geom.d1 == 120.0);
    CHECK(cfg.sweep.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(cfg.fading.k1 == 1.0); // commented-out line is ignored
}

TEST_CASE("parse_config_text: errors carry the key and the line") {
    auto error_of = [](const std::string& text) -> std::string {
        try {
            harness::parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    SUBCASE("range violation names the key") {
        const std::string msg = error_of("d1 = -5\n");
        CHECK(msg.find("'d1'") != std::string::npos);
        CHECK(msg.find("line 1") != std::string::npos);
    }
    SUBCASE("unknown key is rejected with its line") {
        const std::string msg = error_of("# hi\n\nd1 = 10\nunknown_knob = 3\n");
        CHECK(msg.find("'unknown_knob'") != std::string::npos);
        CHECK(msg.find("line 4") != std::string::npos);
    }
    SUBCASE("unparseable number") {
        const std::string msg = error_of("alpha1 = fast\n");
        CHECK(msg.find("'alpha1'") != std::string::npos);
    }
    SUBCASE("missing equals sign") {
        CHECK(error_of("d1 10\n").find("line 1") != std::string::npos);
    }
    SUBCASE("duplicate key") {
        const std::string msg = error_of("d1 = 10\nd1 = 20\n");
        CHECK(msg.find("duplicate") != std::string::npos);
        CHECK(msg.find("'d1'") != std::string::npos);
    }
    SUBCASE("alpha out of its modelled range") {
        CHECK(error_of("alpha2 = 0.5\n").find("'alpha2'") != std::string::npos);
        CHECK(error_of("alpha2 = 6.5\n").find("'alpha2'") != std::string::npos);
    }
    SUBCASE("positive reference loss") {
        CHECK(error_of("ref_loss_db = 3\n").find("'ref_loss_db'") !=
              std::string::npos);
    }
    SUBCASE("sample floor") {
        const std::string msg = error_of("samples = 999\n");
        CHECK(msg.find("'samples'") != std::string::npos);
        CHECK(msg.find("1000") != std::string::npos);
    }
    SUBCASE("non-integer element count") {
        CHECK(error_of("n_elements = 2.5\n").find("'n_elements'") !=
              std::string::npos);
    }
    SUBCASE("bad convention string") {
        CHECK(error_of("rayleigh_convention = rayleigh\n")
                  .find("'rayleigh_convention'") != std::string::npos);
    }
}

TEST_CASE("parse_config_text: sweep validation") {
    auto error_of = [](const std::string& text) -> std::string {
        try {
            harness::parse_config_text(text);
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    SUBCASE("values must increase strictly") {
        const std::string msg = error_of("sweep.values = 4, 4, 8\n");
        CHECK(msg.find("'sweep.values'") != std::string::npos);
        CHECK(msg.find("increasing") != std::string::npos);
    }
    SUBCASE("element sweeps need integer counts") {
        CHECK(error_of("sweep.variable = N\nsweep.values = 1, 2.5\n")
                  .find("integer") != std::string::npos);
    }
    SUBCASE("reflector split must stay inside the total path") {
        const std::string msg = error_of(
            "sweep.variable = d1_split\nsweep.values = 100, 250, 300\n");
        CHECK(msg.find("'sweep.values'") != std::string::npos);
    }
    SUBCASE("K sweeps cannot go negative") {
        CHECK(error_of("sweep.variable = K\nsweep.values = -1, 0, 1\n")
                  .find("'sweep.values'") != std::string::npos);
    }
    SUBCASE("empty output list is rejected") {
        CHECK(error_of("sweep.outputs = ,\n").find("'sweep.outputs'") !=
              std::string::npos);
    }
    SUBCASE("unknown output name") {
        CHECK(error_of("sweep.outputs = capacity\n").find("'capacity'") !=
              std::string::npos);
    }
}

TEST_CASE("load_config: missing file raises an I/O error") {
    CHECK_THROWS_AS(harness::load_config("/definitely/not/here.cfg"),
                    harness::IoError);
}

TEST_CASE("resolved_config_lines: complete, canonical, and parseable") {
    Config cfg = harness::parse_config_text("d2 = 90\nseed = 7\n");
    const std::vector<std::string> lines = harness::resolved_config_lines(cfg);
    REQUIRE(lines.size() == 20);
    CHECK(lines[0] == "d1 = 150");
    CHECK(lines[1] == "d2 = 90");
    CHECK(lines[10] == "rayleigh_convention = unit_power");
    CHECK(lines[19] == "seed = 7");

    // Feeding the resolved lines back through the parser reproduces the
    // configuration exactly: the header is a faithful record.
    std::string text;
    for (const std::string& l : lines) text += l + "\n";
    const Config back = harness::parse_config_text(text);
    CHECK(back.geom.d2 == cfg.geom.d2);
    CHECK(back.sweep.seed == cfg.sweep.seed);
    CHECK(back.sweep.values == cfg.sweep.values);
}

TEST_CASE("run_sweep: element sweep applies N and orders capacity") {
    Config cfg = harness::parse_config_text(
        "sweep.variable = N\nsweep.values = 2, 8, 32\n"
        "sweep.outputs = cap_bound\nsamples = 1000\n");
    const harness::SweepResult res = harness::run_sweep(cfg);
    REQUIRE(res.rows.size() == 3);
    REQUIRE(res.outputs == std::vector<Output>{Output::cap_bound});
    channel::FadingConfig fading = cfg.fading;
    double prev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(res.rows[i].sweep_value == cfg.sweep.values[i]);
        fading.n_elements = static_cast<int>(cfg.sweep.values[i]);
        const double direct = analytic::capacity_upper_bound(
            cfg.geom, fading, cfg.radio, cfg.fading.rayleigh_convention);
        CHECK(res.rows[i].values[0] == direct);
        CHECK(res.rows[i].half_widths[0] == 0.0); // analytic: no MC error bar
        CHECK(res.rows[i].values[0] > prev);
        prev = res.rows[i].values[0];
    }
}

TEST_CASE("run_sweep: K sweep sets both hop factors") {
    Config cfg = harness::parse_config_text(
        "sweep.variable = K\nsweep.values = 0, 2\n"
        "sweep.outputs = cap_bound\nsamples = 1000\n");
    const harness::SweepResult res = harness::run_sweep(cfg);
    channel::FadingConfig fading = cfg.fading;
    fading.k1 = fading.k2 = 2.0;
    CHECK(res.rows[1].values[0] ==
          analytic::capacity_upper_bound(cfg.geom, fading, cfg.radio,
                                         cfg.fading.rayleigh_convention));
}

TEST_CASE("run_sweep: d1_split repositions the reflector on a fixed path") {
    Config cfg = harness::parse_config_text(
        "sweep.variable = d1_split\nsweep.values = 100, 150, 200\n"
        "sweep.outputs = cap_bound\nsamples = 1000\n");
    const harness::SweepResult res = harness::run_sweep(cfg);
    // 100/200 and 200/100 are mirror placements on the 300 m total: with
    // equal exponents the bound is exactly symmetric.
    CHECK(res.rows[0].values[0] == res.rows[2].values[0]);
    // Mid-path placement maximizes the product path loss, so it is the
    // strict worst case.
    CHECK(res.rows[1].values[0] < res.rows[0].values[0]);
}

TEST_CASE("run_sweep: Monte Carlo outputs carry error bars") {
    Config cfg = harness::parse_config_text(
        "n_elements = 4\nsweep.variable = N\nsweep.values = 4\n"
        "sweep.outputs = mc_capacity cap_bound\nsamples = 2000\n");
    const harness::SweepResult res = harness::run_sweep(cfg, 2);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].values[0] > 0.0);
    CHECK(res.rows[0].half_widths[0] > 0.0);  // mc_capacity
    CHECK(res.rows[0].half_widths[1] == 0.0); // cap_bound
    CHECK(res.rows[0].values[0] <=
          res.rows[0].values[1] + res.rows[0].half_widths[0]);
}

TEST_CASE("csv_text: layout, and bytes independent of worker count") {
    Config cfg = harness::parse_config_text(
        "n_elements = 4\nsweep.variable = N\nsweep.values = 2, 4\n"
        "sweep.outputs = mc_capacity cap_bound\nsamples = 1000\nseed = 5\n");
    const std::string one = harness::csv_text(harness::run_sweep(cfg, 1), cfg);
    const std::string four = harness::csv_text(harness::run_sweep(cfg, 4), cfg);
    CHECK(one == four);

    // Header: every '#' line is a resolved config entry; then the column row.
    std::istringstream in(one);
    std::string line;
    int hash_lines = 0;
    while (std::getline(in, line) && !line.empty() && line[0] == '#') {
        ++hash_lines;
        CHECK(line.find(" = ") != std::string::npos);
        CHECK(line.find("workers") == std::string::npos); // never recorded
    }
    CHECK(hash_lines == 20);
    CHECK(line == "sweep_value,mc_capacity,mc_capacity_hw,cap_bound,cap_bound_hw");
    int data_rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++data_rows;
    }
    CHECK(data_rows == 2);
}

TEST_CASE("write_csv: writes atomically and reruns are byte-identical") {
    Config cfg = harness::parse_config_text(
        "n_elements = 2\nsweep.variable = N\nsweep.values = 2\n"
        "sweep.outputs = mc_capacity\nsamples = 1000\nseed = 3\n");
    const harness::SweepResult res = harness::run_sweep(cfg);

    const std::string path = "harness_test_out.csv";
    harness::write_csv(res, cfg, path);
    const std::string first = slurp(path);
    CHECK(first == harness::csv_text(res, cfg));
    CHECK(first.find("sweep_value") != std::string::npos);

    harness::write_csv(harness::run_sweep(cfg, 3), cfg, path);
    CHECK(slurp(path) == first);

    // No temp file left behind.
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
    std::remove(path.c_str());

    CHECK_THROWS_AS(
        harness::write_csv(res, cfg, "/no/such/directory/out.csv"),
        harness::IoError);
}
