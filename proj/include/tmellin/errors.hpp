#ifndef TMELLIN_ERRORS_HPP
#define TMELLIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tmellin {

// The transform integral diverges (zeta pole: 1/(1-e^-x) at s = 0).
struct DivergenceError : std::domain_error {
    explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

// Requested capability (analytic derivative, antiderivative, closed form,
// inversion kind) is not available for this function kind.
struct UnsupportedError : std::invalid_argument {
    explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

// Function-descriptor string does not match the grammar name(p1,p2,...).
struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative numeric kernel (tridiagonal eigensolve) failed to converge.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tmellin

#endif
