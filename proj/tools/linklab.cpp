// linklab — command-line front end.
//
//   linklab run      --config cfg.txt --out results.csv [--samples N]
//                    [--seed S] [--workers W] [--plot-script plot.py]
//   linklab eval     --config cfg.txt
//   linklab selftest
//
// Exit codes: 0 success, 1 selftest failures, 2 configuration error,
// 3 I/O error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "linklab/analytic.hpp"
#include "linklab/channel.hpp"
#include "linklab/config.hpp"
#include "linklab/selftest.hpp"
#include "linklab/sweep.hpp"

namespace {

void print_eval(const linklab::harness::Config& cfg) {
    using namespace linklab;
    const auto& geom = cfg.geom;
    const auto& fading = cfg.fading;
    const auto& radio = cfg.radio;
    const auto convention = fading.rayleigh_convention;
    geom.validate();
    fading.validate();
    radio.validate();

    auto line = [](const char* key, double v) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-18s = %.17g\n", key, v);
        std::cout << buf;
    };
    line("transmit_snr", channel::transmit_snr(radio));
    line("gamma_threshold", channel::gamma_threshold(radio));
    line("mean_snr", analytic::mean_snr(geom, fading, radio, convention));
    line("cap_bound",
         analytic::capacity_upper_bound(geom, fading, radio, convention));
    const analytic::CltMoments m = analytic::clt_moments(geom, fading);
    line("clt_mu", m.mu);
    line("clt_sigma2", m.sigma2);
    line("outage_clt", analytic::outage_clt(geom, fading, radio, convention));
    const analytic::HighSnrLaw law =
        analytic::near_origin_coefficient(geom, fading, radio);
    line("near_origin_coeff", law.a_coeff);
    std::cout << "diversity_order    = " << law.diversity << "\n";
    line("outage_high_snr", analytic::outage_high_snr(geom, fading, radio));
}

void write_plot_script(const std::string& csv_path,
                       const std::string& script_path) {
    std::ofstream out(script_path);
    if (!out)
        throw linklab::harness::IoError("cannot open '" + script_path +
                                        "' for writing");
    out << "#!/usr/bin/env python3\n"
           "\"\"\"Plot a linklab sweep CSV (auto-generated stub).\"\"\"\n"
           "import csv\n"
           "import matplotlib.pyplot as plt\n"
           "\n"
           "PATH = \"" << csv_path << "\"\n"
           "\n"
           "rows = []\n"
           "with open(PATH) as f:\n"
           "    for line in f:\n"
           "        if not line.startswith('#'):\n"
           "            rows.append(line.strip().split(','))\n"
           "header, data = rows[0], rows[1:]\n"
           "x = [float(r[0]) for r in data]\n"
           "for j, name in enumerate(header[1:], start=1):\n"
           "    if name.endswith('_hw'):\n"
           "        continue\n"
           "    y = [float(r[j]) for r in data]\n"
           "    hw = [float(r[j + 1]) for r in data]\n"
           "    plt.errorbar(x, y, yerr=hw, label=name, marker='o')\n"
           "plt.xlabel(header[0])\n"
           "plt.legend()\n"
           "plt.grid(True)\n"
           "plt.show()\n";
    if (!out.good())
        throw linklab::harness::IoError("error writing '" + script_path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linklab: Monte Carlo and closed-form performance laboratory "
                 "for a phase-aligned reflective relay link"};
    app.require_subcommand(1);

    std::string run_config, run_out, plot_script;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int workers = 0;
    CLI::App* cmd_run =
        app.add_subcommand("run", "Run the configured sweep, write a CSV");
    cmd_run->add_option("--config", run_config, "key = value config file")
        ->required();
    cmd_run->add_option("--out", run_out, "output CSV path")->required();
    CLI::Option* opt_samples = cmd_run->add_option(
        "--samples", samples, "override the configured sample count");
    CLI::Option* opt_seed =
        cmd_run->add_option("--seed", seed, "override the configured seed");
    cmd_run->add_option(
        "--workers", workers,
        "worker threads (default: LINKLAB_WORKERS, else hardware)");
    cmd_run->add_option("--plot-script", plot_script,
                        "also write a matplotlib stub for the CSV");

    std::string eval_config;
    CLI::App* cmd_eval = app.add_subcommand(
        "eval", "Print closed-form analytics for the configured point");
    cmd_eval->add_option("--config", eval_config, "key = value config file")
        ->required();

    CLI::App* cmd_selftest = app.add_subcommand(
        "selftest", "Cross-check the numeric kernels against built-in oracles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the error message
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_selftest->parsed()) {
            return linklab::run_selftest(std::cout) == 0 ? 0 : 1;
        }
        if (cmd_eval->parsed()) {
            print_eval(linklab::harness::load_config(eval_config));
            return 0;
        }
        if (cmd_run->parsed()) {
            linklab::harness::Config cfg =
                linklab::harness::load_config(run_config);
            if (opt_samples->count() > 0) cfg.sweep.n_samples = samples;
            if (opt_seed->count() > 0) cfg.sweep.seed = seed;
            if (cfg.sweep.n_samples < 1000)
                throw linklab::harness::ConfigError(
                    "config error: key 'samples': must be >= 1000");
            const linklab::harness::SweepResult result =
                linklab::harness::run_sweep(cfg, workers);
            linklab::harness::write_csv(result, cfg, run_out);
            if (!plot_script.empty()) write_plot_script(run_out, plot_script);
            std::cout << "wrote " << run_out << " (" << result.rows.size()
                      << " rows)\n";
            return 0;
        }
    } catch (const linklab::harness::ConfigError& e) {
        std::cerr << "linklab: " << e.what() << "\n";
        return 2;
    } catch (const linklab::harness::IoError& e) {
        std::cerr << "linklab: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "linklab: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "linklab: invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "linklab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
