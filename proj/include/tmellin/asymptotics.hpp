#ifndef TMELLIN_ASYMPTOTICS_HPP
#define TMELLIN_ASYMPTOTICS_HPP

#include <span>
#include <vector>

#include "tmellin/function_spec.hpp"
#include "tmellin/quadrature.hpp"

namespace tmellin::asym {

using quad::TransformValue;

// One term of the steepest-descent expansion
//   M f(s) ~ sum_r f^(r)(s) p_r(s) / r!
// where p_r is the integer expansion polynomial of degree floor(r/2).
struct OrderTerm {
    int r = 0;
    double derivative_value = 0.0;  // f^(r)(s)
    double poly_value = 0.0;        // p_r(s)
    double term = 0.0;              // f^(r)(s) p_r(s) / r!
};

struct ExpansionResult {
    double s = 0.0;
    std::vector<OrderTerm> orders;      // r = 0..R
    std::vector<double> partial_sums;   // cumulative; partial_sums[r]-partial_sums[r-1] == term r
};

// Terms and partial sums through order R (R <= 30). Derivatives come from
// the catalog; kinds without analytic derivatives fall back to order-2
// central differences with step 1e-3 (1+s), capped at r <= 4.
ExpansionResult expansion(const FunctionSpec& f, double s, int R);

// Transform against the weight x^{Ns} e^{-Nx}, reduced by dilation:
// equals the plain transform of f(x/N) at Ns.
TransformValue n_twisted(const FunctionSpec& f, double s, double n_parameter, double tol = 1e-10);

// The 1/N expansion of n_twisted, collected by powers of 1/N with the
// exact expansion-polynomial coefficients:
//   coefficient of N^{-j} = sum_{k=j}^{2j} f^(k)(s) a_{k,k-j} s^{k-j} / k!
// At order 2 this is f + (f' + f'' s/2)/N + (f'' + f''' 5s/6 + f'''' s^2/8)/N^2.
// Needs derivatives up to 2*order; order <= 5.
double n_expansion(const FunctionSpec& f, double s, double n_parameter, int order);

// Measured remainder E_R(s) = |M f(s) - partial_sum_R(s)| against the
// quadrature ground truth, plus a log-log regression of its decay in s.
struct RemainderReport {
    int order = 0;
    std::vector<double> s_values;
    std::vector<double> errors;
    std::vector<bool> ground_truth_converged;
    double fitted_slope = 0.0;
    double slope_bound = 0.0;  // growth_degree - (R+1)/2 + 0.5
    bool decreasing = false;
    bool pass = false;  // decreasing and fitted_slope <= slope_bound
};

RemainderReport remainder_scan(const FunctionSpec& f, int R, std::span<const double> s_values);

}  // namespace tmellin::asym

#endif
