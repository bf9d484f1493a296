#ifndef TMELLIN_QUADRATURE_HPP
#define TMELLIN_QUADRATURE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tmellin/function_spec.hpp"

namespace tmellin::quad {

inline constexpr int kMaxNodes = 512;

// Gauss rule for the weight x^s e^{-x} on (0, inf), weights divided by
// Gamma(s+1) so they sum to 1 and integrate() is a weighted average.
// Exact on polynomials of degree <= 2n-1 against the normalized moments
// Gamma(s+k+1)/Gamma(s+1).
//
// Nodes are strictly increasing. Weights are mathematically positive; at
// large n the smallest ones fall below the double denormal range and come
// out as +0.0 (integrate() skips those nodes).
struct GaussLaguerreRule {
    double s = 0.0;
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Jacobi matrix of the generalized Laguerre recurrence (diagonal 2i+s+1,
// off-diagonal sqrt(i(i+s))): eigenvalues give the nodes, which are then
// Newton-polished on the orthonormal recurrence; weights are Christoffel
// numbers 1/sum_k p_k(x_i)^2. Throws ConvergenceError if the eigensolve
// stalls, std::domain_error for s < 0 or n outside [1, 512].
GaussLaguerreRule build_rule(double s, int n);

enum class Method { quadrature, closed_form, series, monte_carlo };
std::string method_name(Method m);

struct TransformValue {
    double value = 0.0;
    double error_estimate = 0.0;
    int nodes_used = 1;
    Method method = Method::quadrature;
    bool converged = true;  // false: doubling hit the node cap before tol
};

double integrate(const GaussLaguerreRule& rule, const std::function<double(double)>& f);
double integrate(const GaussLaguerreRule& rule, const FunctionSpec& f);

// Doubles n from 16 until |value(2n) - value(n)| <= tol (1 + |value(2n)|)
// or n = max_nodes; the returned error_estimate is the last difference and
// converged reports whether tol was met. Rules are cached by (s, n).
TransformValue adaptive_transform(const std::function<double(double)>& f, double s, double tol,
                                  int max_nodes = kMaxNodes);
TransformValue adaptive_transform(const FunctionSpec& f, double s, double tol,
                                  int max_nodes = kMaxNodes);

// Trapezoid after x = e^u: integrates f(e^u) e^{(s+1)u - e^u} du / Gamma(s+1).
// Converges geometrically for integrands with algebraic or logarithmic
// behavior at the origin, where Gauss-Laguerre degrades to slow algebraic
// rates. origin_power is the p in f ~ const x^p as x -> 0+; the effective
// left decay rate s + 1 + p must be positive for the integral to exist.
TransformValue log_substitution_transform(const std::function<double(double)>& f, double s,
                                          double origin_power, double tol);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

// Sample mean of f(X) with X ~ Gamma(s+1, scale 1), i.e. the transform as
// an expectation. Deterministic given the seed (own uniform->normal->gamma
// chain, no implementation-defined distributions). samples >= 1000.
MonteCarloEstimate monte_carlo_oracle(const FunctionSpec& f, double s, long samples,
                                      std::uint64_t seed);
MonteCarloEstimate monte_carlo_oracle(const std::function<double(double)>& f, double s,
                                      long samples, std::uint64_t seed);

}  // namespace tmellin::quad

#endif
