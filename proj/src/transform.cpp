#include "tmellin/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tmellin/errors.hpp"
#include "tmellin/specfun.hpp"

namespace tmellin::mellin {

namespace {

namespace sf = tmellin::specfun;

double rising_factorial(double s, int n) {
    double acc = 1.0;
    for (int i = 1; i <= n; ++i) acc *= (s + i);
    return acc;
}

// Gamma^(n)(x)/Gamma(x) in terms of psi and its derivatives.
double gamma_log_derivative_ratio(int n, double x) {
    switch (n) {
        case 0: return 1.0;
        case 1: return sf::digamma(x);
        case 2: {
            const double p = sf::digamma(x);
            return sf::polygamma(1, x) + p * p;
        }
        case 3: {
            const double p = sf::digamma(x);
            return sf::polygamma(2, x) + 3.0 * p * sf::polygamma(1, x) + p * p * p;
        }
        default:
            throw UnsupportedError("closed_form: (ln x)^n supported only for n <= 3");
    }
}

}  // namespace

std::optional<double> closed_form(const FunctionSpec& f, double s) {
    if (!(s >= 0.0)) throw std::domain_error("closed_form: s must be >= 0");
    const auto& kind = f.kind();
    if (const auto* k = std::get_if<FunctionSpec::Power>(&kind)) {
        if (!(s + k->exponent + 1.0 > 0.0))
            throw std::domain_error("closed_form: requires s + a + 1 > 0");
        return sf::gamma_ratio(s, k->exponent);
    }
    if (const auto* k = std::get_if<FunctionSpec::Poly>(&kind)) {
        double acc = 0.0;
        for (int n = static_cast<int>(k->coeffs.size()) - 1; n >= 0; --n)
            if (k->coeffs[n] != 0.0) acc += k->coeffs[n] * rising_factorial(s, n);
        return acc;
    }
    if (const auto* k = std::get_if<FunctionSpec::ExpDecay>(&kind))
        return std::pow(1.0 + k->rate, -(s + 1.0));
    if (std::holds_alternative<FunctionSpec::Geom>(kind)) {
        if (s == 0.0)
            throw DivergenceError("transform of 1/(1-e^{-x}) diverges at s = 0 (zeta pole)");
        return sf::zeta(s + 1.0);
    }
    if (std::holds_alternative<FunctionSpec::Todd>(kind))
        return (s + 1.0) * sf::zeta(s + 2.0);
    if (const auto* k = std::get_if<FunctionSpec::LogPower>(&kind))
        return gamma_log_derivative_ratio(k->order, s + 1.0);
    if (const auto* k = std::get_if<FunctionSpec::Sine>(&kind)) {
        const double a = k->freq;
        return std::pow(1.0 + a * a, -(s + 1.0) / 2.0) * std::sin((s + 1.0) * std::atan(a));
    }
    if (const auto* k = std::get_if<FunctionSpec::Cosine>(&kind)) {
        const double a = k->freq;
        return std::pow(1.0 + a * a, -(s + 1.0) / 2.0) * std::cos((s + 1.0) * std::atan(a));
    }
    if (const auto* k = std::get_if<FunctionSpec::ProductPower>(&kind)) {
        // x^b e^{-cx} is a catalog entry; other products stay numeric.
        if (const auto* inner = std::get_if<FunctionSpec::ExpDecay>(&k->inner->kind())) {
            const double b = k->exponent;
            if (!(s + b + 1.0 > 0.0))
                throw std::domain_error("closed_form: requires s + b + 1 > 0");
            return std::pow(1.0 + inner->rate, -(1.0 + b + s)) * sf::gamma_ratio(s, b);
        }
        return std::nullopt;
    }
    if (const auto* k = std::get_if<FunctionSpec::Sum>(&kind)) {
        double acc = 0.0;
        for (const auto& [w, g] : k->terms) {
            auto part = closed_form(*g, s);
            if (!part) return std::nullopt;
            acc += w * *part;
        }
        return acc;
    }
    return std::nullopt;  // rational_decay, gaussian, composite nodes
}

bool has_closed_form(const FunctionSpec& f, double s) {
    const auto& kind = f.kind();
    if (const auto* k = std::get_if<FunctionSpec::LogPower>(&kind)) return k->order <= 3;
    if (std::holds_alternative<FunctionSpec::Geom>(kind)) return true;  // s = 0 reports the pole
    if (const auto* k = std::get_if<FunctionSpec::Sum>(&kind)) {
        for (const auto& [w, g] : k->terms)
            if (!has_closed_form(*g, s)) return false;
        return true;
    }
    if (const auto* k = std::get_if<FunctionSpec::ProductPower>(&kind))
        return std::holds_alternative<FunctionSpec::ExpDecay>(k->inner->kind());
    return std::holds_alternative<FunctionSpec::Power>(kind) ||
           std::holds_alternative<FunctionSpec::Poly>(kind) ||
           std::holds_alternative<FunctionSpec::ExpDecay>(kind) ||
           std::holds_alternative<FunctionSpec::Todd>(kind) ||
           std::holds_alternative<FunctionSpec::Sine>(kind) ||
           std::holds_alternative<FunctionSpec::Cosine>(kind);
}

TransformValue numeric_transform(const FunctionSpec& f, double s, double tol, int max_nodes) {
    if (f.needs_singular_backend()) {
        return quad::log_substitution_transform([&f](double x) { return f.evaluate(x); }, s,
                                                f.origin_power(), tol);
    }
    return quad::adaptive_transform(f, s, tol, max_nodes);
}

TransformValue twisted_mellin(const FunctionSpec& f, double s, double tol, int max_nodes) {
    if (!(s >= 0.0)) throw std::domain_error("twisted_mellin: s must be >= 0");
    if (has_closed_form(f, s)) {
        TransformValue out;
        out.value = *closed_form(f, s);  // may throw DivergenceError (geom at 0)
        out.error_estimate = 0.0;
        out.nodes_used = 1;
        out.method = quad::Method::closed_form;
        return out;
    }
    return numeric_transform(f, s, tol, max_nodes);
}

TransformValue alpha_twisted(const FunctionSpec& f, double s, double alpha, double tol) {
    if (!(alpha > 0.0)) throw std::domain_error("alpha_twisted: alpha must be positive");
    // substitution x -> alpha x reduces the weight x^s e^{-alpha x} to the
    // plain one applied to f(x/alpha)
    return twisted_mellin(FunctionSpec::scaled(f, 1.0 / alpha), s, tol);
}

namespace {

// Quadrature of x -> f^{(order)}(x) against the weight at s; pure numeric
// so identity checks never lean on the closed form being verified.
double numeric_of_derivative(const FunctionSpec& f, int order, double s, double tol) {
    if (f.derivative_order_supported() < order)
        throw UnsupportedError("check_identity: " + f.describe() +
                               " lacks analytic derivatives of order " + std::to_string(order));
    const auto eval = [&f, order](double x) { return f.derivative(order, x); };
    if (f.needs_singular_backend())
        return quad::log_substitution_transform(eval, s, f.origin_power() - order, tol).value;
    return quad::adaptive_transform(eval, s, tol).value;
}

double numeric_of(const FunctionSpec& f, double s, double tol) {
    return numeric_transform(f, s, tol).value;
}

double reference_transform(const FunctionSpec& f, double s, double tol) {
    return twisted_mellin(f, s, tol).value;
}

FunctionSpec antiderivative_or_throw(const FunctionSpec& f) {
    auto g = f.antiderivative();
    if (!g)
        throw UnsupportedError("check_identity: no analytic antiderivative for " + f.describe());
    return std::move(*g);
}

}  // namespace

std::string identity_name(Identity tag) {
    switch (tag) {
        case Identity::power_shift: return "power_shift";
        case Identity::damping: return "damping";
        case Identity::derivative: return "derivative";
        case Identity::derivative_n: return "derivative_n";
        case Identity::log_factor: return "log_factor";
        case Identity::antiderivative_floor: return "antiderivative_floor";
        case Identity::antiderivative_integer: return "antiderivative_integer";
        case Identity::antiderivative_step: return "antiderivative_step";
    }
    return "unknown";
}

IdentityReport check_identity(Identity tag, const FunctionSpec& f, double s, double tol,
                              const IdentityParams& params) {
    if (!(tol > 0.0)) throw std::domain_error("check_identity: tol must be positive");
    const double quad_tol = std::max(1e-13, tol * 1e-3);
    IdentityReport rep;
    rep.tag = tag;
    rep.name = identity_name(tag);
    switch (tag) {
        case Identity::power_shift: {
            const double a = params.power_shift_a;
            if (!(s + a >= 0.0))
                throw std::domain_error("power_shift: requires s + a >= 0");
            rep.lhs = numeric_of(FunctionSpec::product_power(f, a), s, quad_tol);
            rep.rhs = sf::gamma_ratio(s, a) * reference_transform(f, s + a, quad_tol);
            break;
        }
        case Identity::damping: {
            const double c = params.damping_c;
            rep.lhs = numeric_of(FunctionSpec::damped(f, c), s, quad_tol);
            rep.rhs = std::pow(1.0 + c, -(s + 1.0)) *
                      reference_transform(FunctionSpec::scaled(f, 1.0 / (c + 1.0)), s, quad_tol);
            break;
        }
        case Identity::derivative: {
            if (s < 1.0) throw std::domain_error("derivative identity: requires s >= 1");
            rep.lhs = numeric_of_derivative(f, 1, s, quad_tol);
            rep.rhs = reference_transform(f, s, quad_tol) -
                      reference_transform(f, s - 1.0, quad_tol);
            break;
        }
        case Identity::derivative_n: {
            const int n = params.derivative_order;
            if (s < n) throw std::domain_error("derivative_n identity: requires s >= n");
            rep.lhs = numeric_of_derivative(f, n, s, quad_tol);
            double acc = 0.0;
            double sign = 1.0;
            double coef = 1.0;
            for (int i = 0; i <= n; ++i) {
                acc += sign * coef * reference_transform(f, s - i, quad_tol);
                sign = -sign;
                coef = coef * (n - i) / (i + 1.0);
            }
            rep.rhs = acc;
            break;
        }
        case Identity::log_factor: {
            // d/ds M f by central difference; the log side by quadrature
            const double h = 1e-5 * (1.0 + s);
            if (s < h) throw std::domain_error("log_factor identity: s too close to 0");
            rep.lhs = (reference_transform(f, s + h, quad_tol) -
                       reference_transform(f, s - h, quad_tol)) /
                      (2.0 * h);
            // the ln factor is log-singular at the origin regardless of f
            const double log_side =
                quad::log_substitution_transform(
                    [&f](double x) { return f.evaluate(x) * std::log(x); }, s, f.origin_power(),
                    quad_tol)
                    .value;
            rep.rhs = log_side - reference_transform(f, s, quad_tol) * sf::digamma(s + 1.0);
            break;
        }
        case Identity::antiderivative_floor: {
            const FunctionSpec g = antiderivative_or_throw(f);
            rep.lhs = numeric_of(g, s, quad_tol);
            const int fl = static_cast<int>(std::floor(s));
            double acc = 0.0;
            for (int i = 0; i <= fl - 1; ++i)
                acc += reference_transform(f, s - i, quad_tol);
            acc += numeric_of(g, s - fl, quad_tol);
            rep.rhs = acc;
            break;
        }
        case Identity::antiderivative_integer: {
            const int n = static_cast<int>(std::llround(s));
            if (std::abs(s - n) > 1e-12)
                throw std::domain_error("antiderivative_integer identity: s must be an integer");
            const FunctionSpec g = antiderivative_or_throw(f);
            rep.lhs = numeric_of(g, static_cast<double>(n), quad_tol);
            double acc = 0.0;
            for (int i = 0; i <= n; ++i)
                acc += reference_transform(f, static_cast<double>(i), quad_tol);
            rep.rhs = acc;
            break;
        }
        case Identity::antiderivative_step: {
            if (s < 1.0) throw std::domain_error("antiderivative_step identity: requires s >= 1");
            const FunctionSpec g = antiderivative_or_throw(f);
            rep.lhs = numeric_of(g, s, quad_tol);
            rep.rhs = reference_transform(f, s, quad_tol) + numeric_of(g, s - 1.0, quad_tol);
            break;
        }
    }
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.pass = rep.residual <= tol * (1.0 + std::abs(rep.rhs));
    return rep;
}

DecayReport schwartz_decay_probe(const FunctionSpec& f, int alpha_max,
                                 std::span<const double> s_grid) {
    const auto* constant = std::get_if<FunctionSpec::Poly>(&f.kind());
    const bool schwartz = std::holds_alternative<FunctionSpec::Gaussian>(f.kind()) ||
                          std::holds_alternative<FunctionSpec::ExpDecay>(f.kind()) ||
                          (constant && constant->coeffs.size() == 1);
    if (!schwartz)
        throw UnsupportedError("schwartz_decay_probe: supported for gaussian/exp_decay probes");
    if (alpha_max < 0) throw std::domain_error("schwartz_decay_probe: alpha_max must be >= 0");
    DecayReport rep;
    rep.s_grid.assign(s_grid.begin(), s_grid.end());
    rep.pass = true;
    std::vector<double> base(s_grid.size());
    for (size_t i = 0; i < s_grid.size(); ++i)
        base[i] = std::abs(twisted_mellin(f, s_grid[i], 1e-11).value);
    for (int alpha = 0; alpha <= alpha_max; ++alpha) {
        std::vector<double> scaled(s_grid.size());
        for (size_t i = 0; i < s_grid.size(); ++i)
            scaled[i] = std::pow(s_grid[i], alpha) * base[i];
        // bounded with a non-increasing tail: once past the first point,
        // no later value may exceed its predecessor beyond roundoff
        for (size_t i = 1; i < scaled.size(); ++i)
            if (scaled[i] > scaled[i - 1] * (1.0 + 1e-9) + 1e-300) rep.pass = false;
        rep.scaled_values.push_back(std::move(scaled));
    }
    return rep;
}

ComplexTransform complex_closed_form(const FunctionSpec& f) {
    using C = std::complex<double>;
    const auto& kind = f.kind();
    if (const auto* k = std::get_if<FunctionSpec::Poly>(&kind)) {
        const std::vector<double> coeffs = k->coeffs;
        return [coeffs](C s) {
            C acc = 0.0;
            for (int n = static_cast<int>(coeffs.size()) - 1; n >= 0; --n) {
                if (coeffs[n] == 0.0) continue;
                C rise = 1.0;
                for (int i = 1; i <= n; ++i) rise *= (s + static_cast<double>(i));
                acc += coeffs[n] * rise;
            }
            return acc;
        };
    }
    if (const auto* k = std::get_if<FunctionSpec::Power>(&kind)) {
        const double a = k->exponent;
        return [a](C s) { return std::exp(sf::ln_gamma(s + a + 1.0) - sf::ln_gamma(s + 1.0)); };
    }
    if (const auto* k = std::get_if<FunctionSpec::ExpDecay>(&kind)) {
        const double ln_base = std::log1p(k->rate);
        return [ln_base](C s) { return std::exp(-(s + 1.0) * ln_base); };
    }
    if (const auto* k = std::get_if<FunctionSpec::Sum>(&kind)) {
        std::vector<std::pair<double, ComplexTransform>> parts;
        for (const auto& [w, g] : k->terms) parts.emplace_back(w, complex_closed_form(*g));
        return [parts](C s) {
            C acc = 0.0;
            for (const auto& [w, t] : parts) acc += w * t(s);
            return acc;
        };
    }
    throw UnsupportedError("complex_closed_form: inversion supports poly, power, exp_decay");
}

double invert(const ComplexTransform& mf, double x, double c, double height, int steps,
              InvertInfo* info) {
    if (!(x > 0.0)) throw std::domain_error("invert: x must be positive");
    if (!(height > 0.0) || steps < 2)
        throw std::domain_error("invert: height must be positive and steps >= 2");
    using C = std::complex<double>;
    const double lx = std::log(x);
    const auto integrand = [&](double t) {
        const C s(c, t);
        return std::exp(sf::ln_gamma(s + 1.0)) * mf(s) * std::exp(-(s + 1.0) * lx);
    };
    const double h = 2.0 * height / steps;
    C acc = 0.5 * (integrand(-height) + integrand(height));
    for (int k = 1; k < steps; ++k) acc += integrand(-height + k * h);
    acc *= h;
    // ds = i dt cancels the i in 1/(2 pi i)
    const double value = std::exp(x) * acc.real() / (2.0 * std::numbers::pi);
    if (info) {
        const double tail =
            std::max(std::abs(integrand(height)), std::abs(integrand(-height)));
        const double scale = std::max(std::abs(acc) / (2.0 * std::numbers::pi), 1e-300);
        info->integrand_tail_ratio = tail / scale;
        info->truncation_warning = info->integrand_tail_ratio > 1e-8;
    }
    return value;
}

}  // namespace tmellin::mellin
