#ifndef TMELLIN_POLYSEQ_HPP
#define TMELLIN_POLYSEQ_HPP

#include <optional>
#include <vector>

#include "tmellin/exact_poly.hpp"

namespace tmellin::poly {

inline constexpr int kMaxStirlingN = 200;
inline constexpr int kMaxExpansionOrder = 200;

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt odd_double_factorial(int k);  // (2k-1)!! with (-1)!! = 1

// Triangle of signless Stirling numbers of the first kind c(n,k):
// permutations of n elements with k cycles, 1 <= k <= n <= n_max.
// Built from c(n+1,k) = c(n,k-1) + n c(n,k).
class StirlingTable {
public:
    explicit StirlingTable(int n_max);
    int n_max() const { return static_cast<int>(rows_.size()); }
    const BigInt& at(int n, int k) const;        // throws outside the triangle
    BigInt value_or_zero(int n, int k) const;    // 0 for k < 1 or k > n

private:
    std::vector<std::vector<BigInt>> rows_;  // rows_[n-1][k-1] = c(n,k)
};

// c(n,k) backed by a shared, thread-safe table; 1 <= k <= n <= 200.
BigInt stirling_unsigned(int n, int k);

// (s+1)(s+2)...(s+n) as an exact polynomial in s; the coefficient of s^k
// is c(n+1, k+1). n <= 100.
IntPoly rising_factorial_poly(int n);

// Expansion polynomial by the three-term recurrence
// p_r = r p_{r-1} + (r-1) s p_{r-2}, p_0 = p_1 = 1. Degree floor(r/2).
const IntPoly& expansion_poly_recurrence(int r);

// Same polynomial via the alternating Stirling sum
// sum_i (-1)^{r-i} C(r,i) (s+1)...(s+i) s^{r-i}. Must match the recurrence.
IntPoly expansion_poly_sum(int r);

// Coefficient table a[r][i] with p_r(s) = sum_i a[r][i] s^i, built from
// a_{r,i} = r a_{r-1,i} + (r-1) a_{r-2,i-1}, then cross-checked against the
// weighted factorial-sum identity
// a_{r,k} = sum_{m=2k}^{r} (m-1) a_{m-2,k-1} r!/m!  (throws on mismatch).
std::vector<std::vector<BigInt>> expansion_coefficient_table(int r_max);

// Power-series coefficients of e^{-sx} (1-x)^{-(1+s)} in x, each a
// polynomial in s; coefficient of x^r equals p_r(s)/r!.
std::vector<RatPoly> egf_truncation(int order);

// Constants C_{l,j}, l = j..2j, with c(i+1, i+1-j) = sum_l C_{l,j} (i)_l
// for every i ((i)_l = falling factorial). Solved exactly on the window
// i = j..2j and then verified for all i <= i_max; throws if any residual
// is nonzero. Requires j <= 10 and i_max >= 2j+2.
std::vector<BigRat> stirling_diagonal_fit(int j, int i_max);

// sum_{i=j}^{r} (-1)^{r-i} C(r,i) c(i+1, i-j+1); equals the coefficient of
// s^{r-j} in p_r times nothing -- it IS that coefficient, so it vanishes
// exactly when 2j < r and equals a_{r,r-j} != 0 at 2j = r.
BigInt alternating_stirling_sum(int r, int j);

// Desk-scale exhaustive checks of the combinatorial interpretations.
struct InterpretationReport {
    int r = 0;
    int s = 0;
    // permutations w of {1..r+1} with w(i+1) != w(i)+1; equals p_r(1)
    std::optional<BigInt> permutation_count;
    bool permutations_match = true;
    // r x r N-matrices, all row/col sums 3+2s, <= 2 nonzeros per row;
    // equals r! p_r(s)
    std::optional<BigInt> matrix_count;
    bool matrices_match = true;
    // sum of det^4 over +-1 matrices scaled by 2^{-r^2}/r!; equals p_r(2)
    std::optional<BigRat> determinant_moment;
    bool determinants_match = true;
    bool all_match() const { return permutations_match && matrices_match && determinants_match; }
};

// Limits: permutations r <= 6, matrices r <= 2 (s <= 4), determinants r <= 3.
// Throws if r is beyond every limit.
InterpretationReport brute_force_interpretations(int r, int s);

}  // namespace tmellin::poly

#endif
