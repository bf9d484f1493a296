#include "tmellin/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

#include "tmellin/errors.hpp"
#include "tmellin/specfun.hpp"

namespace tmellin::quad {

namespace {

// Implicit-QL eigenvalues of a symmetric tridiagonal matrix, in place.
// d = diagonal, e = off-diagonal (e[i] couples i and i+1, e[n-1] unused).
void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    e[n - 1] = 0.0;
    constexpr double eps = 2.220446049250313e-16;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw ConvergenceError("build_rule: tridiagonal eigensolve did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // deflate and restart the sweep
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

GaussLaguerreRule build_rule(double s, int n) {
    if (!(s >= 0.0)) throw std::domain_error("build_rule: weight parameter s must be >= 0");
    if (n < 1 || n > kMaxNodes) throw std::domain_error("build_rule: n must be in [1, 512]");

    std::vector<double> d(n), e(n);
    for (int i = 0; i < n; ++i) {
        d[i] = 2.0 * i + s + 1.0;
        e[i] = (i + 1 < n) ? std::sqrt((i + 1.0) * (i + 1.0 + s)) : 0.0;
    }
    tridiagonal_eigenvalues(d, e);
    std::sort(d.begin(), d.end());

    // sqb[k] = sqrt(k (k + s)) for the orthonormal recurrence
    std::vector<double> sqb(n + 1);
    for (int k = 1; k <= n; ++k) sqb[k] = std::sqrt(double(k) * (double(k) + s));

    GaussLaguerreRule rule;
    rule.s = s;
    rule.n = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int j = 0; j < n; ++j) {
        double x = d[j];
        double weight = 0.0;
        for (int pass = 0; pass < 3; ++pass) {
            // orthonormal values p_k(x) and derivatives up to k = n
            double p_prev = 0.0, p = 1.0;
            double dp_prev = 0.0, dp = 0.0;
            double sum_sq = 1.0;
            for (int k = 0; k < n; ++k) {
                const double a_k = 2.0 * k + s + 1.0;
                const double p_next = ((x - a_k) * p - sqb[k] * p_prev) / sqb[k + 1];
                const double dp_next = ((x - a_k) * dp + p - sqb[k] * dp_prev) / sqb[k + 1];
                p_prev = p;
                p = p_next;
                dp_prev = dp;
                dp = dp_next;
                if (k < n - 1) sum_sq += p * p;
            }
            weight = std::isfinite(sum_sq) ? 1.0 / sum_sq : 0.0;
            // Newton step toward the root of p_n
            if (std::isfinite(p) && std::isfinite(dp) && dp != 0.0) {
                const double step = p / dp;
                if (std::isfinite(step)) x -= step;
            }
        }
        rule.nodes[j] = x;
        rule.weights[j] = weight;
    }
    for (int j = 0; j + 1 < n; ++j)
        if (!(rule.nodes[j] < rule.nodes[j + 1]))
            throw ConvergenceError("build_rule: nodes failed to separate");
    if (rule.nodes[0] <= 0.0) throw ConvergenceError("build_rule: nonpositive node");
    return rule;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::quadrature: return "quadrature";
        case Method::closed_form: return "closed_form";
        case Method::series: return "series";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

double integrate(const GaussLaguerreRule& rule, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (int i = 0; i < rule.n; ++i) {
        if (rule.weights[i] == 0.0) continue;  // underflowed tail node
        acc += rule.weights[i] * f(rule.nodes[i]);
    }
    return acc;
}

double integrate(const GaussLaguerreRule& rule, const FunctionSpec& f) {
    return integrate(rule, [&f](double x) { return f.evaluate(x); });
}

namespace {

std::mutex cache_mutex;

std::shared_ptr<const GaussLaguerreRule> cached_rule(double s, int n) {
    static std::map<std::pair<double, int>, std::shared_ptr<const GaussLaguerreRule>> cache;
    const auto key = std::make_pair(s, n);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const GaussLaguerreRule>(build_rule(s, n));
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto [it, inserted] = cache.emplace(key, std::move(rule));
    if (cache.size() > 256) {
        auto victim = cache.begin();
        if (victim->first == key) ++victim;
        cache.erase(victim);
        it = cache.find(key);
    }
    return it->second;
}

}  // namespace

TransformValue adaptive_transform(const std::function<double(double)>& f, double s, double tol,
                                  int max_nodes) {
    if (!(tol >= 1e-13)) throw std::domain_error("adaptive_transform: tol must be >= 1e-13");
    if (max_nodes < 32 || max_nodes > kMaxNodes)
        throw std::domain_error("adaptive_transform: max_nodes must be in [32, 512]");
    TransformValue out;
    out.method = Method::quadrature;
    double prev = integrate(*cached_rule(s, 16), f);
    int n = 16;
    while (n < max_nodes) {
        n *= 2;
        const double value = integrate(*cached_rule(s, n), f);
        const double diff = std::abs(value - prev);
        out.value = value;
        out.error_estimate = diff;
        out.nodes_used = n;
        if (diff <= tol * (1.0 + std::abs(value))) {
            out.converged = true;
            return out;
        }
        prev = value;
    }
    out.converged = false;
    return out;
}

TransformValue adaptive_transform(const FunctionSpec& f, double s, double tol, int max_nodes) {
    return adaptive_transform([&f](double x) { return f.evaluate(x); }, s, tol, max_nodes);
}

TransformValue log_substitution_transform(const std::function<double(double)>& f, double s,
                                          double origin_power, double tol) {
    if (!(tol >= 1e-13)) throw std::domain_error("log_substitution_transform: tol must be >= 1e-13");
    const double rate = s + 1.0 + origin_power;  // left-tail decay exponent
    if (!(rate > 0.0))
        throw DivergenceError("log_substitution_transform: integrand not integrable at 0");
    const double ln_gamma_s1 = specfun::ln_gamma(s + 1.0);

    // Window: left until e^{rate u} is negligible (with slack for slowly
    // varying log factors), right until the exponent has fallen ~46 e-folds
    // below the peak at u = ln(s+1).
    double u_lo = std::max(-690.0, -(52.0 / rate) - 8.0);
    const double peak = (s + 1.0) * std::log(s + 1.0 + 1e-12) - (s + 1.0) - ln_gamma_s1;
    double u_hi = std::log(s + 2.0);
    while ((s + 1.0) * u_hi - std::exp(u_hi) - ln_gamma_s1 > peak - 50.0) u_hi += 0.5;

    const auto g = [&](double u) {
        return f(std::exp(u)) * std::exp((s + 1.0) * u - std::exp(u) - ln_gamma_s1);
    };

    TransformValue out;
    out.method = Method::quadrature;
    double h = 0.25;
    long count = static_cast<long>(std::floor((u_hi - u_lo) / h)) + 1;
    double total = 0.0;
    for (long k = 0; k < count; ++k) total += g(u_lo + k * h);
    double value = h * total;
    out.converged = false;
    for (int level = 0; level < 8; ++level) {
        // halve h, reusing the coarse sum
        double odd = 0.0;
        for (long k = 0; k < count - 1; ++k) odd += g(u_lo + (k + 0.5) * h);
        h *= 0.5;
        count = 2 * count - 1;
        total += odd;
        const double refined = h * total;
        const double diff = std::abs(refined - value);
        value = refined;
        out.value = value;
        out.error_estimate = diff;
        out.nodes_used = static_cast<int>(std::min<long>(count, 1 << 30));
        if (diff <= tol * (1.0 + std::abs(value))) {
            out.converged = true;
            break;
        }
    }
    return out;
}

namespace {

// Deterministic uniform/normal/gamma chain: identical streams on every
// platform for a given seed.
class GammaSampler {
public:
    GammaSampler(double shape, std::uint64_t seed) : shape_(shape), rng_(seed) {}

    double next() {
        // Marsaglia-Tsang squeeze; shape >= 1 always holds here.
        const double d = shape_ - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    double next_uniform() {  // (0, 1]
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double shape_;
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

MonteCarloEstimate monte_carlo_oracle(const std::function<double(double)>& f, double s,
                                      long samples, std::uint64_t seed) {
    if (samples < 1000) throw std::domain_error("monte_carlo_oracle: samples must be >= 1000");
    if (!(s >= 0.0)) throw std::domain_error("monte_carlo_oracle: s must be >= 0");
    GammaSampler sampler(s + 1.0, seed);
    // Welford accumulation
    double mean = 0.0, m2 = 0.0;
    for (long i = 1; i <= samples; ++i) {
        const double v = f(sampler.next());
        const double delta = v - mean;
        mean += delta / static_cast<double>(i);
        m2 += delta * (v - mean);
    }
    MonteCarloEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(m2 / (static_cast<double>(samples) - 1.0) /
                              static_cast<double>(samples));
    est.samples = samples;
    return est;
}

MonteCarloEstimate monte_carlo_oracle(const FunctionSpec& f, double s, long samples,
                                      std::uint64_t seed) {
    return monte_carlo_oracle([&f](double x) { return f.evaluate(x); }, s, samples, seed);
}

}  // namespace tmellin::quad
