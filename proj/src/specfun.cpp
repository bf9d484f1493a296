#include "tmellin/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmellin::specfun {

namespace {

// Even Bernoulli numbers B_2, B_4, ..., B_30.
constexpr std::array<double, 15> kBernoulli2n = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Lanczos g = 7, 9 coefficients; valid for Re(z) > 0.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

template <class T>
T lanczos_ln_gamma(T z) {
    // Shifted form: series evaluated at z-1.
    z -= T(1);
    T acc = T(kLanczos[0]);
    for (int k = 1; k < 9; ++k) acc += T(kLanczos[k]) / (z + T(k));
    T t = z + T(7.5);
    return T(kHalfLogTwoPi) + (z + T(0.5)) * std::log(t) - t + std::log(acc);
}

double factorial_small(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Bernoulli asymptotic series for psi^(m)(x), valid once x is large.
double polygamma_asymptotic(int m, double x, int terms) {
    if (m == 0) {
        double total = std::log(x) - 0.5 / x;
        double x2 = x * x;
        double xp = x2;
        for (int j = 1; j <= terms && j <= 15; ++j) {
            total -= kBernoulli2n[j - 1] / (2.0 * j * xp);
            xp *= x2;
        }
        return total;
    }
    // (-1)^(m-1) [ (m-1)!/x^m + m!/(2 x^{m+1})
    //            + sum_j B_2j (2j+m-1)!/(2j)! x^{-2j-m} ]
    double total = factorial_small(m - 1) * std::pow(x, -m) +
                   factorial_small(m) * 0.5 * std::pow(x, -m - 1);
    for (int j = 1; j <= terms && j <= 15; ++j) {
        double ratio = 1.0;  // (2j+m-1)! / (2j)!
        for (int t = 2 * j + 1; t <= 2 * j + m - 1; ++t) ratio *= t;
        total += kBernoulli2n[j - 1] * ratio * std::pow(x, -2 * j - m);
    }
    return (m % 2 == 1) ? total : -total;
}

}  // namespace

void SpecFunConfig::validate() const {
    if (series_terms < 10) throw std::domain_error("SpecFunConfig: series_terms must be >= 10");
    if (asymptotic_threshold < 6.0)
        throw std::domain_error("SpecFunConfig: asymptotic_threshold must be >= 6");
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    if (x < 0.5) return lanczos_ln_gamma(x + 1.0) - std::log(x);
    return lanczos_ln_gamma(x);
}

std::complex<double> ln_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0)) throw std::domain_error("ln_gamma: requires Re(z) > 0");
    if (z.real() < 0.5) return lanczos_ln_gamma(z + 1.0) - std::log(z);
    return lanczos_ln_gamma(z);
}

double gamma_ratio(double s, double a, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(s + 1.0 > 0.0) || !(s + a + 1.0 > 0.0))
        throw std::domain_error("gamma_ratio: both gamma arguments must be positive");
    if (a == 0.0) return 1.0;
    return std::exp(ln_gamma(s + a + 1.0) - ln_gamma(s + 1.0));
}

double polygamma(int m, double x, const SpecFunConfig& cfg) {
    cfg.validate();
    if (m < 0 || m > 8) throw std::domain_error("polygamma: order must satisfy 0 <= m <= 8");
    if (!(x > 0.0)) throw std::domain_error("polygamma: argument must be positive");
    // Lift x above the asymptotic threshold.
    double shift = 0.0;
    const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;
    const double mfact = factorial_small(m);
    while (x < cfg.asymptotic_threshold) {
        shift -= sign_m * mfact * std::pow(x, -m - 1);
        x += 1.0;
    }
    return polygamma_asymptotic(m, x, cfg.series_terms) + shift;
}

double zeta(double x, const SpecFunConfig& cfg) {
    cfg.validate();
    if (!(x > 1.0)) throw std::domain_error("zeta: argument must be > 1");
    // Euler-Maclaurin: head sum to N-1, midpoint + integral tail, Bernoulli
    // corrections with rising-factorial derivatives of k^-x.
    const int n = cfg.series_terms < 16 ? 16 : cfg.series_terms;
    double total = 0.0;
    for (int k = n - 1; k >= 1; --k) total += std::pow(double(k), -x);
    total += 0.5 * std::pow(double(n), -x);
    total += std::pow(double(n), 1.0 - x) / (x - 1.0);
    const double n2 = double(n) * double(n);
    double coef = x / 2.0;  // x (x+1) ... (x+2j-2) / (2j)!
    double npow = std::pow(double(n), -x - 1.0);
    for (int j = 1; j <= 12; ++j) {
        const double term = kBernoulli2n[j - 1] * coef * npow;
        total += term;
        if (std::abs(term) < 1e-17 * total) break;
        coef *= (x + 2.0 * j - 1.0) * (x + 2.0 * j) / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
        npow /= n2;
    }
    return total;
}

}  // namespace tmellin::specfun
