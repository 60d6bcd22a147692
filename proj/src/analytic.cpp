#include "linklab/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "linklab/specfun.hpp"

namespace linklab::analytic {
namespace {

constexpr double kPi = specfun::MathConstants::pi;

struct NormalizedLoss {
    double d1, d2, d3; // D_l = d_l^alpha_l / C0
};

NormalizedLoss normalized(const LinkGeometry& geom) {
    return {channel::normalized_path_loss(geom.d1, geom.alpha1, geom.ref_loss_db),
            channel::normalized_path_loss(geom.d2, geom.alpha2, geom.ref_loss_db),
            channel::normalized_path_loss(geom.d3, geom.alpha3, geom.ref_loss_db)};
}

// Rayleigh CDF exponent b in F_|g|(x) = 1 - exp(-b x^2): the paper's printed
// form uses per-component unit variance (E|g_tilde|^2 = 2, b = D3/2); the
// unit-power convention has E|g_tilde|^2 = 1 (b = D3).
double rayleigh_b(double d3_norm, RayleighConvention convention) {
    return convention == RayleighConvention::paper_verbatim ? 0.5 * d3_norm
                                                            : d3_norm;
}

} // namespace

double mean_snr(const LinkGeometry& geom, const FadingConfig& fading,
                const RadioConfig& radio, RayleighConvention convention) {
    geom.validate();
    fading.validate();
    const double gamma0 = channel::transmit_snr(radio);
    const auto [dd1, dd2, dd3] = normalized(geom);
    const double n = static_cast<double>(fading.n_elements);

    const CltMoments m = clt_moments(geom, fading);
    // E|g| per convention; E|g|^2 = 1/D3 as in the printed bound.
    const double mean_g = convention == RayleighConvention::paper_verbatim
                              ? std::sqrt(kPi / (2.0 * dd3))
                              : std::sqrt(kPi / (4.0 * dd3));
    const double x1 = 1.0 / dd3;
    const double x2 = n / (dd1 * dd2) + n * (n - 1.0) * m.mu * m.mu;
    const double x3 = 2.0 * n * m.mu * mean_g;
    return gamma0 * (x1 + x2 + x3);
}

double capacity_upper_bound(const LinkGeometry& geom,
                            const FadingConfig& fading,
                            const RadioConfig& radio,
                            RayleighConvention convention) {
    return std::log2(1.0 + mean_snr(geom, fading, radio, convention));
}

CltMoments clt_moments(const LinkGeometry& geom, const FadingConfig& fading) {
    geom.validate();
    fading.validate();
    const auto [dd1, dd2, dd3] = normalized(geom);
    (void)dd3;
    const double l1 = specfun::laguerre_half(-fading.k1);
    const double l2 = specfun::laguerre_half(-fading.k2);
    const double kp = (fading.k1 + 1.0) * (fading.k2 + 1.0);
    // (l1 * l2) grouped so exchanging the two hops is a bitwise no-op.
    const double mu = kPi * (l1 * l2) / (4.0 * std::sqrt(dd1 * dd2 * kp));
    const double sigma2 =
        (1.0 / (dd1 * dd2)) *
        (1.0 - kPi * kPi * (l1 * l2) * (l1 * l2) / (16.0 * kp));
    return {mu, sigma2};
}

double outage_clt(const LinkGeometry& geom, const FadingConfig& fading,
                  const RadioConfig& radio, RayleighConvention convention) {
    const double gamma0 = channel::transmit_snr(radio);
    const double gamma_th = channel::gamma_threshold(radio);
    const auto [dd1, dd2, dd3] = normalized(geom);
    (void)dd1;
    (void)dd2;
    const CltMoments m = clt_moments(geom, fading);
    const double n = static_cast<double>(fading.n_elements);

    // Exact convolution of the Gaussian approximation of the cascade sum
    // (mean N mu, variance v = N sigma2) with the Rayleigh direct link
    // (CDF 1 - exp(-b x^2)):
    //   P = 1/2 + (1/2) erf(t / sqrt(2v))
    //       - 1/(2 sqrt(r)) exp(-b t^2 / r) (1 + erf(t / sqrt(2 v r))),
    // with t = sqrt(gamma_th/gamma0) - N mu and r = 1 + 2 b v.
    const double b = rayleigh_b(dd3, convention);
    const double v = n * m.sigma2;
    const double t = std::sqrt(gamma_th / gamma0) - n * m.mu;
    const double r = 1.0 + 2.0 * b * v;
    const double p = 0.5 + 0.5 * specfun::erf(t / std::sqrt(2.0 * v)) -
                     0.5 / std::sqrt(r) * std::exp(-b * t * t / r) *
                         (1.0 + specfun::erf(t / std::sqrt(2.0 * v * r)));
    if (p < -1e-12 || p > 1.0 + 1e-12) {
        std::fprintf(stderr,
                     "linklab: outage_clt clamped a non-probability value "
                     "%.3e (N=%d)\n",
                     p, fading.n_elements);
    }
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double product_rician_pdf(double beta, double k1, double k2, int truncation,
                          bool* converged) {
    if (!(beta > 0.0))
        throw std::domain_error(
            "product_rician_pdf: beta must be > 0 (log singularity at 0)");
    if (truncation < 1)
        throw std::domain_error("product_rician_pdf: truncation must be >= 1");
    if (!(k1 >= 0.0) || !(k2 >= 0.0))
        throw std::domain_error("product_rician_pdf: K factors must be >= 0");

    // f(beta) = 2 c1 c2 e^{-(K1+K2)} sum_{n,p} K1^n K2^p / ((n!)^2 (p!)^2)
    //           * s^{n+p} K_{|n-p|}(2 s),     s = sqrt(c1 c2 beta).
    //
    // Evaluated via G_m = s^m K_m(2s), which satisfies the overflow-safe
    // upward recurrence G_{m+1} = s^2 G_{m-1} + m G_m (no large-order Bessel
    // at small argument ever appears explicitly).
    const double c1 = k1 + 1.0;
    const double c2 = k2 + 1.0;
    const double s2 = c1 * c2 * beta;
    const double s = std::sqrt(s2);

    const int t = truncation;
    std::vector<double> g(static_cast<std::size_t>(t)); // orders 0 .. t-1
    g[0] = specfun::bessel_k(0, 2.0 * s);
    if (t > 1) g[1] = s * specfun::bessel_k(1, 2.0 * s);
    for (int m = 1; m + 1 < t; ++m)
        g[m + 1] = s2 * g[m - 1] + static_cast<double>(m) * g[m];

    double total = 0.0;
    double last_diag = 0.0; // magnitude of the final diagonal term
    double cn = 1.0;        // K1^n / (n!)^2
    for (int n = 0; n < t; ++n) {
        if (n > 0) {
            cn *= k1 / (static_cast<double>(n) * n);
            if (cn == 0.0) break;
        }
        double cnp = cn; // K1^n K2^p / ((n!)^2 (p!)^2)
        double s2m = 1.0; // s^{2 min(n,p)} for p <= n is s^{2p}
        for (int p = 0; p < t; ++p) {
            if (p > 0) {
                cnp *= k2 / (static_cast<double>(p) * p);
                if (cnp == 0.0) break;
                s2m = p <= n ? s2m * s2 : s2m;
            }
            const double term = cnp * s2m * g[static_cast<std::size_t>(n > p ? n - p : p - n)];
            total += term;
            if (n == t - 1 && p == t - 1) last_diag = std::abs(term);
        }
    }

    if (converged != nullptr) {
        // The diagonal terms decay like (K1 K2 s^2)^t / (t!)^4; call the
        // truncation converged when the last diagonal term is below the
        // accumulation floor.
        *converged = last_diag <= 1e-14 * std::abs(total);
    }
    return 2.0 * c1 * c2 * std::exp(-(k1 + k2)) * total;
}

HighSnrLaw near_origin_coefficient(const LinkGeometry& geom,
                                   const FadingConfig& fading,
                                   const RadioConfig& radio) {
    geom.validate();
    fading.validate();
    const double gamma0 = channel::transmit_snr(radio);
    const auto [dd1, dd2, dd3] = normalized(geom);
    (void)dd3;
    const double c1 = fading.k1 + 1.0;
    const double c2 = fading.k2 + 1.0;
    const double arg = 2.0 * std::sqrt(c1 * c2 / (dd1 * dd2 * gamma0));
    const double bracket = specfun::ein_series(fading.k1) +
                           specfun::ein_series(fading.k2) +
                           2.0 * specfun::bessel_k(0, arg);
    const double a = c1 * c2 * std::exp(-(fading.k1 + fading.k2)) * bracket;
    return {a, 0, fading.n_elements + 1};
}

double outage_high_snr(const LinkGeometry& geom, const FadingConfig& fading,
                       const RadioConfig& radio) {
    const double gamma0 = channel::transmit_snr(radio);
    const double gamma_th = channel::gamma_threshold(radio);
    const auto [dd1, dd2, dd3] = normalized(geom);
    const HighSnrLaw law = near_origin_coefficient(geom, fading, radio);
    const double n = static_cast<double>(fading.n_elements);

    // ln P = ln sqrt(pi) + N ln a + N (ln D1 + ln D2) + ln D3
    //        - ln Gamma(N + 3/2) - ln Gamma(N + 2) - (N+1) ln(2 gamma0/gamma_th)
    const double ln_p = 0.5 * std::log(kPi) + n * std::log(law.a_coeff) +
                        n * (std::log(dd1) + std::log(dd2)) + std::log(dd3) -
                        specfun::ln_gamma(n + 1.5) - specfun::ln_gamma(n + 2.0) -
                        (n + 1.0) * std::log(2.0 * gamma0 / gamma_th);
    const double p = std::exp(ln_p);
    return p > 1.0 ? 1.0 : p;
}

} // namespace linklab::analytic
