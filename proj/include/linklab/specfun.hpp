#pragma once

// Scalar special functions needed by the closed-form link analysis: error
// function, modified Bessel functions I0/I1 and K_n, the Laguerre "polynomial"
// of order 1/2, the entire exponential-integral combination Ei(k) - gamma -
// ln(k), and the log-gamma function.  Everything is evaluated by series /
// asymptotic switching in double precision; no external math library is used.
//
// All functions are pure and thread-safe.  Precondition violations throw
// std::domain_error.

namespace linklab::specfun {

// Accuracy target carried around by tests and self-checks.  At least one of
// the two bounds must be strictly positive.
struct Tolerance {
    double relative = 0.0;
    double absolute = 0.0;
};

struct MathConstants {
    static constexpr double euler_gamma = 0.57721566490153286061;
    static constexpr double pi = 3.14159265358979323846;
};

// Error function, |error| <= 1e-12 absolute over [-6, 6].
double erf(double x);

// Modified Bessel function of the first kind, order 0 or 1, x >= 0.
double bessel_i(int order, double x);

// Modified Bessel function of the second kind, integer order, x > 0.
// Negative orders are folded by the symmetry K_{-n} = K_n.
double bessel_k(int order, double x);

// Laguerre function L_{1/2}(x) for x <= 0, via the closed form
//   L_{1/2}(x) = e^{x/2} [ (1 - x) I_0(-x/2) - x I_1(-x/2) ].
// Evaluated with exponentially scaled Bessels so it stays finite for any
// K = -x up to the overflow limit of the result itself.
double laguerre_half(double x);

// ein_series(k) = sum_{n>=1} k^n / (n * n!) = Ei(k) - gamma - ln(k) for k > 0,
// the combination that appears in the deep-fade coefficient.  Entire in k, so
// ein_series(0) = 0 with no cancellation.
double ein_series(double k);

// Natural log of the gamma function for x > 0.
double ln_gamma(double x);

} // namespace linklab::specfun
