#ifndef TMELLIN_TRANSFORM_HPP
#define TMELLIN_TRANSFORM_HPP

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmellin/function_spec.hpp"
#include "tmellin/quadrature.hpp"

namespace tmellin::mellin {

using quad::TransformValue;

// Transform value from the closed-form catalog, when f is a pure catalog
// kind with one:
//   x^a            -> Gamma(s+a+1)/Gamma(s+1)
//   polynomials    -> sum of rising factorials (s+1)...(s+n)
//   e^{-cx}        -> (c+1)^{-s-1}
//   x^b e^{-cx}    -> (c+1)^{-1-b-s} Gamma(s+b+1)/Gamma(s+1)
//   1/(1-e^{-x})   -> zeta(s+1)            (diverges at s = 0)
//   x/(1-e^{-x})   -> (s+1) zeta(s+2)
//   (ln x)^n       -> Gamma^(n)(s+1)/Gamma(s+1), n <= 3
//   sin(ax)        -> (1+a^2)^{-(s+1)/2} sin((s+1) arctan a)
//   cos(ax)        -> (1+a^2)^{-(s+1)/2} cos((s+1) arctan a)
// plus weighted sums of the above. Returns nullopt for composite kinds and
// the kinds without catalog entries (1/(1+x), gaussian). Throws
// DivergenceError for 1/(1-e^{-x}) at s = 0 and UnsupportedError for
// (ln x)^n with n > 3.
//
// The trig pair is the a = 1 form extended to general frequency; the
// exponent (s+1)/2 and phase (s+1) arctan a are forced by
// M(e^{iax})(s) = (1-ia)^{-(s+1)} and by consistency at a = 1.
std::optional<double> closed_form(const FunctionSpec& f, double s);

bool has_closed_form(const FunctionSpec& f, double s);

// Numeric transform: Gauss-Laguerre doubling for integrands smooth at the
// origin, the log-substitution trapezoid for singular ones. max_nodes caps
// the Gauss-Laguerre doubling only.
TransformValue numeric_transform(const FunctionSpec& f, double s, double tol,
                                 int max_nodes = quad::kMaxNodes);

// The transform itself: closed form when available, else numeric.
TransformValue twisted_mellin(const FunctionSpec& f, double s, double tol = 1e-10,
                              int max_nodes = quad::kMaxNodes);

// Transform against the weight x^s e^{-alpha x}, reduced by substitution to
// the plain transform of f(x/alpha).
TransformValue alpha_twisted(const FunctionSpec& f, double s, double alpha, double tol = 1e-10);

// Identities relating the transform of a derived function to transform
// values of f itself. Both sides are evaluated independently: the derived
// side by pure quadrature on analytic derivatives/antiderivatives, the
// reference side through twisted_mellin.
enum class Identity {
    power_shift,            // M(x^a f)(s)     = Gamma(s+a+1)/Gamma(s+1) M f(s+a)
    damping,                // M(e^{-cx} f)(s) = (c+1)^{-s-1} M f(x/(c+1))(s)
    derivative,             // M(f')(s)        = M f(s) - M f(s-1)
    derivative_n,           // M(f^{(n)})(s)   = sum_i (-1)^i C(n,i) M f(s-i)
    log_factor,             // d/ds M f(s)     = M(f ln x)(s) - M f(s) psi(s+1)
    antiderivative_floor,   // M g(s) = sum_{i<floor(s)} M f(s-i) + M g(s-floor(s))
    antiderivative_integer, // M g(n) = sum_{i=0..n} M f(i)
    antiderivative_step,    // M g(s) = M f(s) + M g(s-1)
};

std::string identity_name(Identity tag);

struct IdentityParams {
    double power_shift_a = 1.5;  // the a of power_shift
    double damping_c = 1.0;      // the c of damping
    int derivative_order = 2;    // the n of derivative_n
};

struct IdentityReport {
    Identity tag;
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool pass = false;
};

// pass iff |lhs - rhs| <= tol (1 + |rhs|). Throws UnsupportedError when f
// lacks the analytic derivative or antiderivative the identity needs.
IdentityReport check_identity(Identity tag, const FunctionSpec& f, double s, double tol,
                              const IdentityParams& params = {});

// Checks that s^alpha |M f(s)| stays bounded with a non-increasing tail
// over the grid, for every alpha <= alpha_max. For Schwartz-class catalog
// entries (gaussian, exp_decay).
struct DecayReport {
    std::vector<double> s_grid;
    std::vector<std::vector<double>> scaled_values;  // [alpha][grid point]
    bool pass = false;
};

DecayReport schwartz_decay_probe(const FunctionSpec& f, int alpha_max,
                                 std::span<const double> s_grid);

// Closed-form transform extended to complex s, for the inversion contour;
// supports polynomials, x^a, e^{-cx} and sums of those.
using ComplexTransform = std::function<std::complex<double>(std::complex<double>)>;
ComplexTransform complex_closed_form(const FunctionSpec& f);

struct InvertInfo {
    double integrand_tail_ratio = 0.0;  // |integrand(c+iT)| / |integral|
    bool truncation_warning = false;    // tail ratio above 1e-8
};

// Mellin inversion: f(x) = e^x/(2 pi i) int_{c-iT}^{c+iT}
// Gamma(s+1) mf(s) x^{-s-1} ds, as a trapezoid sum over the vertical
// segment. The 1/(2 pi i) normalization is required for the roundtrip
// f -> M f -> f to close.
double invert(const ComplexTransform& mf, double x, double c = 1.0, double height = 40.0,
              int steps = 4000, InvertInfo* info = nullptr);

}  // namespace tmellin::mellin

#endif
