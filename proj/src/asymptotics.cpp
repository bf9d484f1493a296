#include "tmellin/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "tmellin/errors.hpp"
#include "tmellin/polyseq.hpp"
#include "tmellin/transform.hpp"

namespace tmellin::asym {

namespace {

// Order-2 central stencils for r <= 4.
double finite_difference(const FunctionSpec& f, int r, double x) {
    const double h = 1e-3 * (1.0 + x);
    const auto v = [&](double dx) { return f.evaluate(x + dx); };
    switch (r) {
        case 1: return (v(h) - v(-h)) / (2.0 * h);
        case 2: return (v(h) - 2.0 * v(0.0) + v(-h)) / (h * h);
        case 3: return (v(2 * h) - 2.0 * v(h) + 2.0 * v(-h) - v(-2 * h)) / (2.0 * h * h * h);
        case 4:
            return (v(2 * h) - 4.0 * v(h) + 6.0 * v(0.0) - 4.0 * v(-h) + v(-2 * h)) /
                   (h * h * h * h);
        default:
            throw UnsupportedError("expansion: finite-difference fallback is capped at order 4");
    }
}

double derivative_value(const FunctionSpec& f, int r, double x) {
    if (r == 0) return f.evaluate(x);
    if (f.derivative_order_supported() >= r) return f.derivative(r, x);
    if (r <= 4) return finite_difference(f, r, x);
    throw UnsupportedError("expansion: " + f.describe() + " lacks derivatives of order " +
                           std::to_string(r));
}

}  // namespace

ExpansionResult expansion(const FunctionSpec& f, double s, int R) {
    if (R < 0 || R > 30) throw std::domain_error("expansion: order must be in [0, 30]");
    if (!(s >= 0.0)) throw std::domain_error("expansion: s must be >= 0");
    ExpansionResult out;
    out.s = s;
    double running = 0.0;
    double r_factorial = 1.0;
    for (int r = 0; r <= R; ++r) {
        if (r > 0) r_factorial *= r;
        OrderTerm term;
        term.r = r;
        term.derivative_value = derivative_value(f, r, s);
        term.poly_value = poly::expansion_poly_recurrence(r).eval(s);
        term.term = term.derivative_value * term.poly_value / r_factorial;
        running += term.term;
        out.orders.push_back(term);
        out.partial_sums.push_back(running);
    }
    return out;
}

TransformValue n_twisted(const FunctionSpec& f, double s, double n_parameter, double tol) {
    if (!(n_parameter > 0.0)) throw std::domain_error("n_twisted: N must be positive");
    return mellin::twisted_mellin(FunctionSpec::scaled(f, 1.0 / n_parameter), n_parameter * s,
                                  tol);
}

double n_expansion(const FunctionSpec& f, double s, double n_parameter, int order) {
    if (order < 0 || order > 5) throw std::domain_error("n_expansion: order must be in [0, 5]");
    if (!(n_parameter > 0.0)) throw std::domain_error("n_expansion: N must be positive");
    const auto table = poly::expansion_coefficient_table(std::max(1, 2 * order));
    double total = 0.0;
    double n_power = 1.0;
    for (int j = 0; j <= order; ++j) {
        double coef = 0.0;
        for (int k = j; k <= 2 * j; ++k) {
            const int i = k - j;  // power of s contributed by a_{k,i}
            if (i > k / 2) continue;
            double k_factorial = 1.0;
            for (int t = 2; t <= k; ++t) k_factorial *= t;
            const double a = table[k][i].convert_to<double>();
            coef += derivative_value(f, k, s) * a * std::pow(s, i) / k_factorial;
        }
        total += coef / n_power;
        n_power *= n_parameter;
    }
    return total;
}

RemainderReport remainder_scan(const FunctionSpec& f, int R, std::span<const double> s_values) {
    if (s_values.empty()) throw std::domain_error("remainder_scan: empty s grid");
    for (size_t i = 0; i + 1 < s_values.size(); ++i)
        if (!(s_values[i] < s_values[i + 1]))
            throw std::domain_error("remainder_scan: s values must be increasing");
    if (!(s_values.front() >= 5.0))
        throw std::domain_error("remainder_scan: s values must be >= 5");
    RemainderReport rep;
    rep.order = R;
    rep.s_values.assign(s_values.begin(), s_values.end());
    rep.slope_bound = f.growth_degree() - 0.5 * (R + 1) + 0.5;
    double sum_lx = 0.0, sum_ly = 0.0, sum_lxly = 0.0, sum_lx2 = 0.0;
    int fit_count = 0;
    rep.decreasing = true;
    for (const double s : s_values) {
        const auto truth = mellin::numeric_transform(f, s, 1e-11);
        rep.ground_truth_converged.push_back(truth.converged);
        const double err = std::abs(truth.value - expansion(f, s, R).partial_sums.back());
        rep.errors.push_back(err);
        if (err > 0.0) {
            const double lx = std::log(s), ly = std::log(err);
            sum_lx += lx;
            sum_ly += ly;
            sum_lxly += lx * ly;
            sum_lx2 += lx * lx;
            ++fit_count;
        }
    }
    for (size_t i = 1; i < rep.errors.size(); ++i)
        if (!(rep.errors[i] < rep.errors[i - 1])) rep.decreasing = false;
    if (fit_count >= 2) {
        rep.fitted_slope = (fit_count * sum_lxly - sum_lx * sum_ly) /
                           (fit_count * sum_lx2 - sum_lx * sum_lx);
    } else {
        rep.fitted_slope = -std::numeric_limits<double>::infinity();
    }
    // exact termination leaves only roundoff; that passes vacuously
    bool all_zero = true;
    for (double e : rep.errors)
        if (e > 1e-10) all_zero = false;
    rep.pass = all_zero || (rep.decreasing && rep.fitted_slope <= rep.slope_bound);
    return rep;
}

}  // namespace tmellin::asym
