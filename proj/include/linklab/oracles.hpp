#pragma once

// Independent reference implementations ("oracles") used to verify the
// series/asymptotic special functions in specfun.hpp.  Each oracle evaluates
// a textbook integral representation or an exact recursion with generic
// quadrature -- deliberately sharing no code with the production routines --
// so agreement between the two is meaningful evidence of correctness.
//
// These are slow-but-sure routines intended for tests and `linklab selftest`,
// not for the hot path.

#include <functional>

namespace linklab::oracles {

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance eps.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double eps);

// erf(x) = (2/sqrt(pi)) * integral_0^x exp(-t^2) dt.
double erf(double x);

// I_nu(x) = (1/pi) * integral_0^pi exp(x cos t) cos(nu t) dt  (integer nu),
// by periodic trapezoid rule (spectrally accurate for this integrand).
double bessel_i(int order, double x);

// K_nu(x) = integral_0^inf exp(-x cosh t) cosh(nu t) dt  (integer nu),
// by trapezoid rule on the doubly-exponentially decaying integrand.
double bessel_k(int order, double x);

// ein(k) = integral_0^k (e^t - 1)/t dt = sum_{n>=1} k^n/(n n!), by adaptive
// quadrature of the (removable-singularity) integrand.
double ein(double k);

// ln Gamma at x = x0 + m for integer m >= 0, anchored at lnGamma(0.5) =
// ln sqrt(pi) or lnGamma(1) = 0 and climbed with Gamma(x+1) = x Gamma(x).
// Valid anchors: x in (0, 2]; the climb is exact log-sum arithmetic.
double ln_gamma_recursion(double anchor_x, double anchor_ln_gamma, int steps);

// Mean envelope E|h| of a unit-power Rician fading coefficient with factor K:
//   f(r) = 2(K+1) r exp(-K - (K+1) r^2) I_0(2 r sqrt(K(K+1))),  r >= 0,
// where I_0 itself is evaluated by the integral-representation oracle, making
// this a nested quadrature fully independent of specfun.
double rician_mean(double k_factor);

} // namespace linklab::oracles
