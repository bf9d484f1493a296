#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tmellin/specfun.hpp"

namespace sf = tmellin::specfun;

namespace {

// --- independent oracles (no shared code with the implementation) ---

// Gamma(1/2) by Simpson quadrature of 2 e^{-t^2} on [0, 12] (x = t^2).
double oracle_gamma_half() {
    const double a = 0.0, b = 12.0;
    const long n = 24000;  // even
    const double h = (b - a) / n;
    auto f = [](double t) { return 2.0 * std::exp(-t * t); };
    double acc = f(a) + f(b);
    for (long k = 1; k < n; ++k) acc += f(a + k * h) * ((k % 2) ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Euler-Mascheroni constant as lim H_K - ln(K+1).
double oracle_euler_gamma() {
    const long k_max = 2000000;
    long double h = 0.0L;
    for (long k = k_max; k >= 1; --k) h += 1.0L / k;
    return static_cast<double>(h - std::log(static_cast<long double>(k_max) + 1.0L));
}

// zeta by direct summation plus the integral tail N^{1-x}/(x-1).
double oracle_zeta(double x, long n) {
    long double acc = 0.0L;
    for (long k = n; k >= 1; --k) acc += std::pow(static_cast<long double>(k), -x);
    acc += std::pow(static_cast<long double>(n), 1.0 - x) / (x - 1.0);
    return static_cast<double>(acc);
}

constexpr double kLnSqrtPi = 0.57236494292470008707;   // ln Gamma(1/2)
constexpr double kLn24 = 3.1780538303479458348;        // ln Gamma(5)
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kZeta2 = 1.6449340668482264365;       // pi^2/6
constexpr double kZeta4 = 1.0823232337111381916;       // pi^4/90

}  // namespace

TEST_CASE("oracles validate the frozen constants") {
    CHECK(std::abs(std::log(oracle_gamma_half()) - kLnSqrtPi) < 1e-9);
    CHECK(std::abs(oracle_euler_gamma() - kEulerGamma) < 1e-6);
    CHECK(std::abs(oracle_zeta(2.0, 2000000) - kZeta2) < 1e-12);
    CHECK(std::abs(oracle_zeta(4.0, 200000) - kZeta4) < 1e-13);
}

TEST_CASE("ln_gamma catalog values") {
    CHECK(std::abs(sf::ln_gamma(5.0) - kLn24) < 1e-13 * kLn24);
    CHECK(std::abs(sf::ln_gamma(1.0)) < 1e-14);
    CHECK(std::abs(sf::ln_gamma(2.0)) < 1e-14);
    CHECK(std::abs(sf::ln_gamma(0.5) - kLnSqrtPi) < 1e-13);
}

TEST_CASE("ln_gamma recurrence over [0.5, 100]") {
    for (double x = 0.5; x <= 100.0; x += 0.37) {
        const double lhs = sf::ln_gamma(x + 1.0) - sf::ln_gamma(x) - std::log(x);
        CHECK(std::abs(lhs) <= 1e-12);
    }
}

TEST_CASE("ln_gamma relative accuracy at large arguments") {
    // Stirling cross-check at x where the series is itself reliable
    for (double x : {1e3, 1e4, 1e5, 1e6}) {
        const double stirling = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI) +
                                1.0 / (12.0 * x) - 1.0 / (360.0 * x * x * x);
        CHECK(std::abs(sf::ln_gamma(x) - stirling) <= 1e-13 * (1.0 + std::abs(stirling)));
    }
}

TEST_CASE("ln_gamma domain errors") {
    CHECK_THROWS_AS((void)sf::ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS((void)sf::ln_gamma(-3.2), std::domain_error);
}

TEST_CASE("complex ln_gamma satisfies the shift identity") {
    using C = std::complex<double>;
    for (double re : {0.7, 2.3, 5.0}) {
        for (double im : {-7.0, 0.5, 20.0}) {
            const C z(re, im);
            const C diff = sf::ln_gamma(z + 1.0) - sf::ln_gamma(z) - std::log(z);
            CHECK(std::abs(diff) < 1e-12);
        }
    }
    CHECK(std::abs(sf::ln_gamma(std::complex<double>(2.0, 0.0))) < 1e-13);
}

TEST_CASE("gamma_ratio basics") {
    CHECK(sf::gamma_ratio(2.0, 3.0) == doctest::Approx(60.0).epsilon(1e-13));
    CHECK(sf::gamma_ratio(0.5, 1.0) == doctest::Approx(1.5).epsilon(1e-13));
    for (double s : {0.0, 0.3, 7.0, 123.0, 99999.0}) CHECK(sf::gamma_ratio(s, 0.0) == 1.0);
}

TEST_CASE("gamma_ratio equals the rising product for integer shifts") {
    for (double s : {0.0, 0.5, 1.0, 10.0, 100.0}) {
        for (int n = 1; n <= 8; ++n) {
            double product = 1.0;
            for (int i = 1; i <= n; ++i) product *= (s + i);
            CHECK(std::abs(sf::gamma_ratio(s, n) - product) <= 1e-12 * product);
        }
    }
}

TEST_CASE("gamma_ratio stays finite at large s") {
    // ratio ~ s^a even when Gamma(s+1) itself would overflow
    const double r = sf::gamma_ratio(1e5, 2.0);
    CHECK(std::isfinite(r));
    CHECK(r == doctest::Approx((1e5 + 1.0) * (1e5 + 2.0)).epsilon(1e-9));
}

TEST_CASE("gamma_ratio domain errors") {
    CHECK_THROWS_AS((void)sf::gamma_ratio(-1.5, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)sf::gamma_ratio(1.0, -3.0), std::domain_error);
}

TEST_CASE("polygamma catalog values") {
    CHECK(std::abs(sf::polygamma(0, 1.0) + kEulerGamma) < 1e-12);
    CHECK(std::abs(sf::polygamma(1, 1.0) - kZeta2) < 1e-11);
    CHECK(std::abs(sf::polygamma(0, 2.0) - sf::polygamma(0, 1.0) - 1.0) < 1e-12);
    CHECK(std::abs(sf::polygamma(3, 1.0) - 6.0 * kZeta4) < 1e-11 * 6.0 * kZeta4);
}

TEST_CASE("polygamma recurrence property") {
    // psi^(m)(x+1) - psi^(m)(x) = (-1)^m m! x^{-m-1}
    for (int m = 0; m <= 8; ++m) {
        double mfact = 1.0;
        for (int t = 2; t <= m; ++t) mfact *= t;
        for (double x : {0.25, 0.8, 1.0, 3.7, 40.0}) {
            const double jump = sf::polygamma(m, x + 1.0) - sf::polygamma(m, x);
            const double expect = ((m % 2) ? -1.0 : 1.0) * mfact * std::pow(x, -m - 1.0);
            CHECK(std::abs(jump - expect) <= 1e-11 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("polygamma bound |psi^(m)(s+1)| <= zeta(m+1) m!") {
    for (int m = 1; m <= 6; ++m) {
        double mfact = 1.0;
        for (int t = 2; t <= m; ++t) mfact *= t;
        const double bound = sf::zeta(m + 1.0) * mfact * (1.0 + 1e-10);
        for (double s : {0.0, 0.5, 1.0, 5.0, 50.0})
            CHECK(std::abs(sf::polygamma(m, s + 1.0)) <= bound);
    }
}

TEST_CASE("polygamma errors") {
    CHECK_THROWS_AS((void)sf::polygamma(9, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)sf::polygamma(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)sf::polygamma(1, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)sf::polygamma(1, -2.0), std::domain_error);
}

TEST_CASE("zeta values and limits") {
    CHECK(std::abs(sf::zeta(2.0) - kZeta2) < 1e-12 * kZeta2);
    CHECK(std::abs(sf::zeta(4.0) - kZeta4) < 1e-12 * kZeta4);
    CHECK(sf::zeta(30.0) > 1.0);
    CHECK(sf::zeta(30.0) < 1.0 + 1e-8);
    // against the direct-sum oracle on a spread of arguments; the oracle's
    // own truncation error is below N^-x
    for (double x : {1.5, 2.5, 3.0, 6.0, 11.0}) {
        const long n = 300000;
        const double oracle_error = std::pow(double(n), -x);
        CHECK(std::abs(sf::zeta(x) - oracle_zeta(x, n)) < oracle_error + 1e-12);
    }
}

TEST_CASE("zeta domain errors") {
    CHECK_THROWS_AS((void)sf::zeta(1.0), std::domain_error);
    CHECK_THROWS_AS((void)sf::zeta(0.99), std::domain_error);
    CHECK_THROWS_AS((void)sf::zeta(-2.0), std::domain_error);
}

TEST_CASE("config invariants") {
    sf::SpecFunConfig bad_terms{5, 14.0};
    CHECK_THROWS_AS(bad_terms.validate(), std::domain_error);
    sf::SpecFunConfig bad_threshold{20, 3.0};
    CHECK_THROWS_AS(bad_threshold.validate(), std::domain_error);
    sf::SpecFunConfig ok{12, 8.0};
    CHECK_NOTHROW(ok.validate());
    CHECK(std::abs(sf::polygamma(2, 0.7, ok) - sf::polygamma(2, 0.7)) < 1e-10);
}
