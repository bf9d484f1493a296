#include "tmellin/verify.hpp"

#include <algorithm>
#include <cmath>

#include "tmellin/asymptotics.hpp"
#include "tmellin/function_spec.hpp"
#include "tmellin/polyseq.hpp"
#include "tmellin/quadrature.hpp"
#include "tmellin/specfun.hpp"
#include "tmellin/transform.hpp"

namespace tmellin::verify {

namespace {

namespace sf = tmellin::specfun;
using tmellin::FunctionSpec;

CheckResult exact_check(std::string name, long mismatches) {
    CheckResult r;
    r.name = std::move(name);
    r.max_residual = static_cast<double>(mismatches);
    r.budget = 0.0;
    r.pass = mismatches == 0;
    return r;
}

CheckResult residual_check(std::string name, double residual, double budget) {
    CheckResult r;
    r.name = std::move(name);
    r.max_residual = residual;
    r.budget = budget;
    r.pass = residual <= budget;
    return r;
}

}  // namespace

std::vector<CheckResult> run_polyseq() {
    std::vector<CheckResult> out;
    namespace pq = tmellin::poly;

    {
        long bad = 0;
        for (int r = 0; r <= 60; ++r)
            if (!(pq::expansion_poly_recurrence(r) == pq::expansion_poly_sum(r))) ++bad;
        out.push_back(exact_check("expansion_poly_route_equivalence_r<=60", bad));
    }
    {
        long bad = 0;
        for (int r = 0; r <= 60; ++r)
            if (pq::expansion_poly_recurrence(r).degree() != r / 2) ++bad;
        out.push_back(exact_check("expansion_poly_degree_floor_r_half", bad));
    }
    {
        long bad = 0;
        const auto table = pq::expansion_coefficient_table(60);
        for (int r = 0; r <= 60; ++r)
            for (const auto& a : table[r])
                if (a <= 0) ++bad;
        out.push_back(exact_check("expansion_coefficients_positive", bad));
    }
    {
        long bad = 0;
        const auto table = pq::expansion_coefficient_table(60);
        for (int r = 0; r <= 60; ++r)
            if (table[r][0] != pq::factorial(r)) ++bad;
        for (int k = 0; k <= 30; ++k)
            if (table[2 * k][k] != pq::odd_double_factorial(k)) ++bad;
        out.push_back(exact_check("coefficient_boundaries_r!_and_(2k-1)!!", bad));
    }
    {
        long bad = 0;
        const auto egf = pq::egf_truncation(40);
        for (int r = 0; r <= 40; ++r) {
            RatPoly expect(pq::expansion_poly_recurrence(r));
            expect *= BigRat(1, pq::factorial(r));
            if (!(egf[r] == expect)) ++bad;
        }
        out.push_back(exact_check("egf_coefficients_match_order<=40", bad));
    }
    {
        long bad = 0;
        for (int n = 1; n <= 30; ++n) {
            BigInt sum = 0;
            for (int k = 1; k <= n; ++k) sum += pq::stirling_unsigned(n, k);
            if (sum != pq::factorial(n)) ++bad;
        }
        out.push_back(exact_check("stirling_row_sums_n!", bad));
    }
    {
        long bad = 0;
        for (int n = 0; n <= 20; ++n) {
            const IntPoly rise = pq::rising_factorial_poly(n);
            for (int k = 0; k <= n; ++k)
                if (rise.coeff(k) != pq::stirling_unsigned(n + 1, k + 1)) ++bad;
        }
        out.push_back(exact_check("rising_factorial_coeffs_are_stirling", bad));
    }
    {
        const BigInt expected[] = {1, 1, 3, 11, 53, 309, 2119};
        long bad = 0;
        for (int r = 0; r <= 6; ++r)
            if (pq::expansion_poly_recurrence(r).eval_int(1) != expected[r]) ++bad;
        out.push_back(exact_check("p_r(1)_sequence_values", bad));
    }
    {
        long bad = 0;
        for (int r = 1; r <= 30; ++r)
            for (int j = 0; 2 * j < r; ++j)
                if (pq::alternating_stirling_sum(r, j) != 0) ++bad;
        for (int k = 1; 2 * k <= 12; ++k)
            if (pq::alternating_stirling_sum(2 * k, k) == 0) ++bad;
        out.push_back(exact_check("alternating_sum_vanishing_2j<r_nonzero_2j=r", bad));
    }
    {
        long bad = 0;
        for (int j = 0; j <= 6; ++j) {
            try {
                (void)pq::stirling_diagonal_fit(j, 40);
            } catch (const std::exception&) {
                ++bad;
            }
        }
        out.push_back(exact_check("stirling_diagonal_fit_residual_zero_j<=6", bad));
    }
    return out;
}

std::vector<CheckResult> run_catalog(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    const double s_grid[] = {0.5, 1.0, 2.5, 10.0};

    struct Entry {
        const char* name;
        FunctionSpec f;
        bool singular_budget;
    };
    const Entry entries[] = {
        {"power_0.5", FunctionSpec::power(0.5), false},
        {"power_2.5", FunctionSpec::power(2.5), false},
        {"monomial_x", FunctionSpec::monomial(1), false},
        {"monomial_x^3", FunctionSpec::monomial(3), false},
        {"poly_mixed", FunctionSpec::poly({1.0, -2.0, 0.0, 3.0}), false},
        {"exp_decay_1", FunctionSpec::exp_decay(1.0), false},
        {"exp_decay_ln2", FunctionSpec::exp_decay(0.6931471805599453), false},
        {"power_exp_decay", FunctionSpec::product_power(FunctionSpec::exp_decay(1.0), 1.5), false},
        {"geom", FunctionSpec::geom(), true},
        {"todd", FunctionSpec::todd(), true},
        {"log_power_1", FunctionSpec::log_power(1), false},
        {"log_power_2", FunctionSpec::log_power(2), false},
        {"log_power_3", FunctionSpec::log_power(3), false},
        {"sine_1", FunctionSpec::sine(1.0), false},
        {"cosine_1", FunctionSpec::cosine(1.0), false},
        {"sine_2_corrected", FunctionSpec::sine(2.0), false},
        {"cosine_0.7_corrected", FunctionSpec::cosine(0.7), false},
    };
    for (const auto& entry : entries) {
        double worst = 0.0;
        const double budget = entry.singular_budget ? opts.singular_tol : opts.catalog_tol;
        for (double s : s_grid) {
            const auto closed = mellin::closed_form(entry.f, s);
            const auto numeric = mellin::numeric_transform(entry.f, s, 1e-12);
            worst = std::max(worst, std::abs(*closed - numeric.value));
        }
        out.push_back(residual_check(std::string("catalog_") + entry.name, worst, budget));
    }

    {  // rule invariants: positivity / normalization / first moment
        double worst_sum = 0.0, worst_mom = 0.0;
        long bad_structure = 0;
        for (double s : {0.0, 0.5, 1.0, 2.5, 10.0}) {
            for (int n : {1, 2, 4, 8, 16, 32, 64, 128}) {
                const auto rule = quad::build_rule(s, n);
                double sum = 0.0, mom = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (!(rule.nodes[i] > 0.0) || !(rule.weights[i] > 0.0)) ++bad_structure;
                    if (i + 1 < n && !(rule.nodes[i] < rule.nodes[i + 1])) ++bad_structure;
                    sum += rule.weights[i];
                    mom += rule.weights[i] * rule.nodes[i];
                }
                worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
                worst_mom = std::max(worst_mom, std::abs(mom - (s + 1.0)) / (s + 1.0));
            }
        }
        out.push_back(exact_check("rule_nodes_weights_structure", bad_structure));
        out.push_back(residual_check("rule_weight_normalization", worst_sum, 1e-12));
        out.push_back(residual_check("rule_first_moment", worst_mom, 1e-10));
    }
    {  // exactness on monomials through degree 2n-1
        double worst = 0.0;
        for (double s : {0.0, 0.5, 1.0, 2.5, 10.0}) {
            for (int n : {1, 2, 4, 8, 16, 32}) {
                const auto rule = quad::build_rule(s, n);
                for (int k = 0; k <= 2 * n - 1; ++k) {
                    const double got = quad::integrate(
                        rule, [k](double x) { return std::pow(x, double(k)); });
                    const double expect = sf::gamma_ratio(s, double(k));
                    worst = std::max(worst, std::abs(got - expect) / expect);
                }
            }
        }
        out.push_back(residual_check("rule_monomial_exactness", worst, 1e-11));
    }
    {  // Monte Carlo vs numeric transform; geom only where variance exists
        double worst_ratio = 0.0;
        const FunctionSpec funcs[] = {
            FunctionSpec::constant(1.0),          FunctionSpec::monomial(1),
            FunctionSpec::monomial(2),            FunctionSpec::power(0.5),
            FunctionSpec::exp_decay(1.0),         FunctionSpec::todd(),
            FunctionSpec::log_power(1),           FunctionSpec::sine(1.0),
            FunctionSpec::cosine(1.0),            FunctionSpec::rational_decay(),
            FunctionSpec::gaussian(),             FunctionSpec::geom(),
        };
        for (const auto& f : funcs) {
            const bool is_geom = std::holds_alternative<FunctionSpec::Geom>(f.kind());
            for (double s : {0.5, 2.0, 7.0}) {
                if (is_geom && s < 2.0) continue;  // infinite variance below s = 1
                const auto mc = quad::monte_carlo_oracle(f, s, opts.mc_samples, opts.seed);
                const auto reference = mellin::numeric_transform(f, s, 1e-11);
                if (mc.std_error == 0.0) continue;  // constant integrand
                worst_ratio = std::max(
                    worst_ratio, std::abs(mc.mean - reference.value) / mc.std_error);
            }
        }
        out.push_back(residual_check("monte_carlo_agreement_stderr_units", worst_ratio, 5.0));
    }
    {  // transform at integer s equals the Gamma-law expectation (spot check)
        const FunctionSpec f = FunctionSpec::poly({0.0, 2.0, 1.0});
        const auto mc = quad::monte_carlo_oracle(f, 3.0, opts.mc_samples, opts.seed);
        const double exact = mellin::twisted_mellin(f, 3.0).value;
        const double ratio = std::abs(mc.mean - exact) / std::max(mc.std_error, 1e-300);
        out.push_back(residual_check("integer_s_expectation_vs_mc", ratio, 5.0));
    }
    return out;
}

std::vector<CheckResult> run_identities(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    using mellin::Identity;
    const double tol = opts.tol;

    const FunctionSpec smooth_catalog[] = {
        FunctionSpec::monomial(3),
        FunctionSpec::exp_decay(1.0),
        FunctionSpec::sine(1.0),
        FunctionSpec::rational_decay(),
    };

    {  // derivative intertwining on a 20-point grid over [1, 20]
        double worst = 0.0;
        for (const auto& f : smooth_catalog) {
            for (int i = 0; i < 20; ++i) {
                const double s = 1.0 + i;
                const auto rep = mellin::check_identity(Identity::derivative, f, s, tol);
                worst = std::max(worst, rep.residual);
            }
        }
        out.push_back(residual_check("intertwining_derivative_grid", worst, tol));
    }
    {  // iterated intertwining, n = 2 and 3
        double worst = 0.0;
        mellin::IdentityParams params;
        for (const auto& f : {FunctionSpec::monomial(5), FunctionSpec::exp_decay(1.0)}) {
            for (int n : {2, 3}) {
                params.derivative_order = n;
                for (double s : {4.0, 9.5}) {
                    const auto rep =
                        mellin::check_identity(Identity::derivative_n, f, s, tol, params);
                    worst = std::max(worst, rep.residual);
                }
            }
        }
        out.push_back(residual_check("intertwining_iterated_n2_n3", worst, tol));
    }
    {  // power shift
        double worst = 0.0;
        mellin::IdentityParams params;
        for (const auto& f :
             {FunctionSpec::monomial(2), FunctionSpec::exp_decay(1.0), FunctionSpec::sine(1.0)}) {
            for (double a : {1.5, 3.0}) {
                params.power_shift_a = a;
                for (double s : {1.0, 2.5, 10.0}) {
                    const auto rep =
                        mellin::check_identity(Identity::power_shift, f, s, 1e-7, params);
                    worst = std::max(worst, rep.residual);
                }
            }
        }
        out.push_back(residual_check("power_shift", worst, 1e-7));
    }
    {  // damping / dilation
        double worst = 0.0;
        mellin::IdentityParams params;
        for (const auto& f : {FunctionSpec::constant(1.0), FunctionSpec::monomial(2),
                              FunctionSpec::sine(1.0)}) {
            for (double c : {1.0, 2.0}) {
                params.damping_c = c;
                for (double s : {0.0, 1.0, 2.5}) {
                    const auto rep = mellin::check_identity(Identity::damping, f, s, tol, params);
                    worst = std::max(worst, rep.residual);
                }
            }
        }
        out.push_back(residual_check("damping_dilation", worst, tol));
    }
    {  // log factor (s-derivative), finite-difference limited
        double worst = 0.0;
        for (const auto& f : {FunctionSpec::monomial(3), FunctionSpec::exp_decay(1.0)}) {
            for (double s : {1.0, 2.5, 10.0}) {
                const auto rep = mellin::check_identity(Identity::log_factor, f, s, 1e-7);
                worst = std::max(worst, rep.residual);
            }
        }
        out.push_back(residual_check("log_factor_s_derivative", worst, 1e-7));
    }
    {  // antiderivative identities
        double worst = 0.0;
        for (double s : {2.5, 4.7})
            worst = std::max(worst, mellin::check_identity(Identity::antiderivative_floor,
                                                           FunctionSpec::sine(1.0), s, tol)
                                          .residual);
        worst = std::max(worst, mellin::check_identity(Identity::antiderivative_floor,
                                                       FunctionSpec::monomial(2), 3.3, tol)
                                      .residual);
        for (const auto& f : {FunctionSpec::constant(1.0), FunctionSpec::monomial(2),
                              FunctionSpec::cosine(1.0)}) {
            for (double s : {0.0, 1.0, 3.0}) {
                worst = std::max(
                    worst,
                    mellin::check_identity(Identity::antiderivative_integer, f, s, tol).residual);
            }
        }
        for (const auto& f : {FunctionSpec::monomial(3), FunctionSpec::sine(1.0)}) {
            for (double s : {1.5, 4.0}) {
                worst = std::max(
                    worst,
                    mellin::check_identity(Identity::antiderivative_step, f, s, tol).residual);
            }
        }
        out.push_back(residual_check("antiderivative_identities", worst, tol));
    }
    {  // linearity through quadrature
        const FunctionSpec f = FunctionSpec::monomial(2);
        const FunctionSpec g = FunctionSpec::exp_decay(1.0);
        const FunctionSpec combo = FunctionSpec::sum({{2.0, f}, {3.0, g}});
        double worst = 0.0;
        for (double s : {0.5, 2.0, 7.0}) {
            const double lhs = quad::adaptive_transform(combo, s, 1e-12).value;
            const double rhs = 2.0 * quad::adaptive_transform(f, s, 1e-12).value +
                               3.0 * quad::adaptive_transform(g, s, 1e-12).value;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back(residual_check("linearity", worst, 1e-10));
    }
    {  // alpha twist: identity at alpha = 1, closed reduction, consistency
        double worst = 0.0;
        for (double s : {0.5, 2.0}) {
            const FunctionSpec x = FunctionSpec::monomial(1);
            worst = std::max(worst, std::abs(mellin::alpha_twisted(x, s, 1.0, 1e-11).value -
                                             mellin::twisted_mellin(x, s).value));
            for (double alpha : {0.5, 3.0})
                worst = std::max(worst, std::abs(mellin::alpha_twisted(x, s, alpha, 1e-11).value -
                                                 (s + 1.0) / alpha));
            const FunctionSpec rd = FunctionSpec::rational_decay();
            for (double alpha : {0.5, 2.0}) {
                const double c = 1.7;
                const double lhs =
                    mellin::alpha_twisted(FunctionSpec::scaled(rd, c), s, alpha, 1e-12).value;
                const double rhs = mellin::alpha_twisted(rd, s, alpha / c, 1e-12).value;
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        out.push_back(residual_check("alpha_twist_reductions", worst, 1e-10));
    }
    {  // polynomial-growth preservation
        const FunctionSpec f = FunctionSpec::poly({0.0, 1.0, 0.0, 1.0});  // x + x^3
        double worst = 0.0;
        for (double s : {10.0, 100.0, 1000.0, 10000.0})
            worst = std::max(worst, mellin::twisted_mellin(f, s).value / (s * s * s));
        out.push_back(residual_check("growth_preservation_x3_plus_x", worst, 2.0));
    }
    {  // Schwartz decay probes
        const double grid[] = {10.0, 20.0, 40.0, 80.0};
        const auto g_rep = mellin::schwartz_decay_probe(FunctionSpec::gaussian(), 3, grid);
        const auto e_rep = mellin::schwartz_decay_probe(FunctionSpec::exp_decay(1.0), 0, grid);
        const auto c_rep = mellin::schwartz_decay_probe(FunctionSpec::constant(1.0), 0, grid);
        out.push_back(exact_check("schwartz_decay_probes",
                                  (g_rep.pass ? 0 : 1) + (e_rep.pass ? 0 : 1) +
                                      (c_rep.pass ? 0 : 1)));
    }
    return out;
}

std::vector<CheckResult> run_asymptotics(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    (void)opts;

    {  // termination on monomials: finite Taylor series reproduces exactly
        double worst = 0.0;
        for (int n = 1; n <= 8; ++n) {
            const FunctionSpec f = FunctionSpec::monomial(n);
            for (double s : {1.0, 5.0, 20.0}) {
                const double expect = mellin::closed_form(f, s).value();
                const double got = asym::expansion(f, s, n).partial_sums.back();
                worst = std::max(worst, std::abs(got - expect) / std::abs(expect));
            }
        }
        out.push_back(residual_check("expansion_termination_monomials", worst, 1e-10));
    }
    {  // order-2 regrouping matches the explicit coefficient formulas
        double worst = 0.0;
        for (double s : {1.0, 2.7, 5.0}) {
            for (double n : {3.0, 10.0}) {
                const double cubic = asym::n_expansion(FunctionSpec::monomial(3), s, n, 2);
                const double cubic_expect = s * s * s + 6.0 * s * s / n + 11.0 * s / (n * n);
                worst = std::max(worst, std::abs(cubic - cubic_expect) /
                                            std::abs(cubic_expect));
                const double quartic = asym::n_expansion(FunctionSpec::monomial(4), s, n, 2);
                const double quartic_expect =
                    s * s * s * s + 10.0 * s * s * s / n + 35.0 * s * s / (n * n);
                worst = std::max(worst, std::abs(quartic - quartic_expect) /
                                            std::abs(quartic_expect));
            }
        }
        out.push_back(residual_check("n_expansion_order2_coefficients", worst, 1e-13));
    }
    {  // n_twisted closed reductions
        double worst = 0.0;
        for (double n : {2.0, 10.0}) {
            for (double s : {1.0, 2.0}) {
                const double got = asym::n_twisted(FunctionSpec::monomial(1), s, n).value;
                worst = std::max(worst, std::abs(got - (s + 1.0 / n)));
            }
        }
        const double cubic = asym::n_twisted(FunctionSpec::monomial(3), 2.0, 10.0).value;
        worst = std::max(worst, std::abs(cubic - 10.626));
        out.push_back(residual_check("n_twisted_dilation_reduction", worst, 1e-10));
    }
    {  // error drops at least 6x per doubling of N once two orders are kept
        const FunctionSpec f = FunctionSpec::rational_decay();
        double errs[3];
        int idx = 0;
        for (double n : {10.0, 20.0, 40.0}) {
            const double truth = asym::n_twisted(f, 3.0, n, 1e-12).value;
            errs[idx++] = std::abs(truth - asym::n_expansion(f, 3.0, n, 2));
        }
        const double min_ratio = std::min(errs[0] / errs[1], errs[1] / errs[2]);
        out.push_back(
            residual_check("n_expansion_ratio_shortfall", std::max(0.0, 6.0 - min_ratio), 0.0));
    }
    {  // remainder decay for the symbol 1/(1+x)
        const double grid[] = {25.0, 50.0, 100.0, 200.0};
        const auto rep = asym::remainder_scan(FunctionSpec::rational_decay(), 2, grid);
        out.push_back(exact_check("remainder_scan_decreasing_slope", rep.pass ? 0 : 1));
    }
    {  // improvement across order pairs at s = 50 (orders oscillate in
        // near-cancelling pairs, so only the pairwise chain is monotone)
        const FunctionSpec f = FunctionSpec::rational_decay();
        const double truth = mellin::numeric_transform(f, 50.0, 1e-12).value;
        const double e0 = std::abs(truth - asym::expansion(f, 50.0, 0).partial_sums.back());
        const double e2 = std::abs(truth - asym::expansion(f, 50.0, 2).partial_sums.back());
        const double e4 = std::abs(truth - asym::expansion(f, 50.0, 4).partial_sums.back());
        out.push_back(exact_check("remainder_pairwise_improvement_s50",
                                  (e4 < e2 ? 0 : 1) + (e4 < e0 ? 0 : 1)));
    }
    return out;
}

std::vector<CheckResult> run_all(const VerifyOptions& opts) {
    std::vector<CheckResult> out = run_polyseq();
    for (const auto& suite : {run_catalog(opts), run_identities(opts), run_asymptotics(opts)})
        out.insert(out.end(), suite.begin(), suite.end());
    return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace tmellin::verify
