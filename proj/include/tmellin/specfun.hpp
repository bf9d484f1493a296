#ifndef TMELLIN_SPECFUN_HPP
#define TMELLIN_SPECFUN_HPP

#include <complex>

namespace tmellin::specfun {

// Truncation/switchover knobs shared by the series-based functions.
// All functions are pure given an immutable config.
struct SpecFunConfig {
    int series_terms = 20;               // >= 10; head length of zeta / polygamma sums
    double asymptotic_threshold = 14.0;  // >= 6; arguments are lifted above this
                                         // before asymptotic series are used
    void validate() const;
};

inline constexpr double euler_gamma = 0.57721566490153286060651209008;

// ln Gamma(x) for x > 0 (Lanczos approximation, g = 7).
// Relative error <= 1e-13 measured against 1 + |ln Gamma| on [0.5, 1e6].
double ln_gamma(double x);

// Complex branch for Re(z) > 0; used by the inversion contour.
std::complex<double> ln_gamma(std::complex<double> z);

// Gamma(s+a+1) / Gamma(s+1), evaluated in log space so large s never
// overflows when the ratio itself is representable.
// Requires s+1 > 0 and s+a+1 > 0.
double gamma_ratio(double s, double a, const SpecFunConfig& cfg = {});

// psi^(m)(x) for x > 0 and 0 <= m <= 8; m = 0 is the digamma function.
// Recurrence psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! x^{-m-1} lifts x above
// cfg.asymptotic_threshold, then the Bernoulli asymptotic series applies.
double polygamma(int m, double x, const SpecFunConfig& cfg = {});

inline double digamma(double x, const SpecFunConfig& cfg = {}) { return polygamma(0, x, cfg); }

// Riemann zeta for real x > 1, via Euler-Maclaurin. Relative error <= 1e-12.
double zeta(double x, const SpecFunConfig& cfg = {});

}  // namespace tmellin::specfun

#endif
