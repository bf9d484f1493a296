#ifndef TMELLIN_VERIFY_HPP
#define TMELLIN_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tmellin::verify {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double budget = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    double tol = 1e-8;             // identity residual budget
    double catalog_tol = 1e-9;     // closed-form vs quadrature (absolute)
    double singular_tol = 1e-7;    // geom/todd closed-form vs quadrature
    std::uint64_t seed = 20260810; // Monte Carlo determinism
    long mc_samples = 200000;
};

// Exact big-integer/rational identities; every residual is exactly 0.
std::vector<CheckResult> run_polyseq();

// Closed forms vs quadrature, rule invariants, Monte Carlo agreement.
std::vector<CheckResult> run_catalog(const VerifyOptions& opts = {});

// Transform identities, growth/decay preservation, dilation reductions.
std::vector<CheckResult> run_identities(const VerifyOptions& opts = {});

// Expansion termination, 1/N regrouping, remainder diagnostics.
std::vector<CheckResult> run_asymptotics(const VerifyOptions& opts = {});

std::vector<CheckResult> run_all(const VerifyOptions& opts = {});

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace tmellin::verify

#endif
