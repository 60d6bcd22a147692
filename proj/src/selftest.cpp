#include "linklab/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "linklab/analytic.hpp"
#include "linklab/channel.hpp"
#include "linklab/kernels.hpp"
#include "linklab/link.hpp"
#include "linklab/oracles.hpp"
#include "linklab/rng.hpp"
#include "linklab/specfun.hpp"

namespace linklab {
namespace {

struct Reporter {
    std::ostream& out;
    int failures = 0;

    void check(const std::string& name, double got, double want, double tol) {
        const double scale = std::max(1.0, std::abs(want));
        const double err = std::abs(got - want) / scale;
        const bool ok = err <= tol;
        if (!ok) ++failures;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-6s %-44s err=%.3e (tol %.1e)\n",
                      ok ? "ok" : "FAIL", name.c_str(), err, tol);
        out << buf;
    }
    void check_true(const std::string& name, bool ok) {
        if (!ok) ++failures;
        out << (ok ? "ok     " : "FAIL   ") << name << "\n";
    }
};

} // namespace

int run_selftest(std::ostream& out) {
    Reporter r{out};

    // --- special functions vs quadrature oracles -------------------------
    for (double x : {0.1, 0.8, 1.0, 2.7, 3.2, 5.0}) {
        r.check("erf(" + std::to_string(x) + ")", specfun::erf(x),
                oracles::erf(x), 1e-13);
    }
    for (double x : {0.05, 0.5, 2.0, 10.0, 19.0}) {
        r.check("I0(" + std::to_string(x) + ")", specfun::bessel_i(0, x),
                oracles::bessel_i(0, x), 1e-11);
        r.check("I1(" + std::to_string(x) + ")", specfun::bessel_i(1, x),
                oracles::bessel_i(1, x), 1e-11);
    }
    for (double x : {0.05, 0.5, 2.0, 5.0, 12.0, 25.0}) {
        r.check("K0(" + std::to_string(x) + ")", specfun::bessel_k(0, x),
                oracles::bessel_k(0, x), 1e-11);
        r.check("K1(" + std::to_string(x) + ")", specfun::bessel_k(1, x),
                oracles::bessel_k(1, x), 1e-11);
    }
    r.check("K3(2.5)", specfun::bessel_k(3, 2.5), oracles::bessel_k(3, 2.5),
            1e-11);
    for (double k : {0.0, 1.0, 5.0}) {
        // The Laguerre value is exactly the mean envelope of a unit-power
        // Rician fade; the oracle integrates that distribution directly.
        const double want =
            oracles::rician_mean(k) /
            std::sqrt(specfun::MathConstants::pi / (4.0 * (k + 1.0)));
        r.check("laguerre_half(-" + std::to_string(k) + ")",
                specfun::laguerre_half(-k), want, 1e-11);
    }
    for (double k : {0.5, 1.0, 5.0, 20.0}) {
        r.check("ein(" + std::to_string(k) + ")", specfun::ein_series(k),
                oracles::ein(k), 1e-12);
    }
    // ln_gamma checked by climbing the recursion from a trusted anchor:
    // ln G(1) = 0 and ln G(0.5) = ln sqrt(pi).
    r.check("ln_gamma(7.0)", specfun::ln_gamma(7.0),
            oracles::ln_gamma_recursion(1.0, 0.0, 6), 1e-13);
    r.check("ln_gamma(9.5)", specfun::ln_gamma(9.5),
            oracles::ln_gamma_recursion(
                0.5, 0.5 * std::log(specfun::MathConstants::pi), 9),
            1e-13);

    // --- product-channel density sanity -----------------------------------
    {
        bool conv = false;
        const double v = analytic::product_rician_pdf(1.0, 1.0, 1.0, 30, &conv);
        r.check_true("product_rician_pdf converged at truncation 30",
                     conv && v > 0.0);
        const double k0form = 2.0 * specfun::bessel_k(0, 2.0 * std::sqrt(0.7));
        r.check("product_rician_pdf K=0 reduces to Bessel form",
                analytic::product_rician_pdf(0.7, 0.0, 0.0, 30), k0form, 1e-12);
    }

    // --- SIMD kernel equivalence ------------------------------------------
    {
        const kernels::Isa active = kernels::active_isa();
        out << "info   active SIMD path: " << kernels::isa_name(active) << "\n";
        rng::Xoshiro256pp gen = rng::sample_stream(12345, 0);
        for (std::size_t n : {1u, 3u, 4u, 7u, 16u, 33u, 64u, 67u}) {
            std::vector<double> a_re(n), a_im(n), b_re(n), b_im(n);
            for (std::size_t i = 0; i < n; ++i) {
                a_re[i] = gen.uniform01() - 0.5;
                a_im[i] = gen.uniform01() - 0.5;
                b_re[i] = gen.uniform01() - 0.5;
                b_im[i] = gen.uniform01() - 0.5;
            }
            const double ref = kernels::env_dot_scalar(
                a_re.data(), a_im.data(), b_re.data(), b_im.data(), n);
            const double got = kernels::env_dot(a_re.data(), a_im.data(),
                                                b_re.data(), b_im.data(), n);
            r.check_true(std::string("env_dot(") + kernels::isa_name(active) +
                             ") == scalar, n=" + std::to_string(n),
                         ref == got);
        }
    }

    // --- determinism -------------------------------------------------------
    {
        channel::LinkGeometry geom;
        channel::FadingConfig fading;
        fading.n_elements = 8;
        channel::RadioConfig radio;
        const link::Estimate one =
            link::mc_ergodic_capacity(geom, fading, radio, 2000, 7, 1);
        const link::Estimate two =
            link::mc_ergodic_capacity(geom, fading, radio, 2000, 7, 2);
        r.check_true("mc_ergodic_capacity identical for 1 vs 2 workers",
                     one.value == two.value &&
                         one.half_width_95 == two.half_width_95);
    }

    out << (r.failures == 0 ? "selftest: all checks passed\n"
                            : "selftest: FAILURES\n");
    return r.failures;
}

} // namespace linklab
