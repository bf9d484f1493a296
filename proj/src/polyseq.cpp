#include "tmellin/polyseq.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace tmellin::poly {

BigInt factorial(int n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt num = 1;
    for (int t = 0; t < k; ++t) num = num * (n - t) / (t + 1);
    return num;
}

BigInt odd_double_factorial(int k) {
    BigInt f = 1;
    for (int t = 3; t <= 2 * k - 1; t += 2) f *= t;
    return f;
}

StirlingTable::StirlingTable(int n_max) {
    if (n_max < 1) throw std::domain_error("StirlingTable: n_max must be positive");
    rows_.resize(n_max);
    rows_[0] = {1};
    for (int n = 1; n < n_max; ++n) {
        auto& row = rows_[n];
        const auto& prev = rows_[n - 1];
        row.assign(n + 1, 0);
        for (int k = 1; k <= n + 1; ++k) {
            BigInt v = (k >= 2) ? prev[k - 2] : BigInt(0);
            if (k <= n) v += n * prev[k - 1];
            row[k - 1] = std::move(v);
        }
    }
}

const BigInt& StirlingTable::at(int n, int k) const {
    if (n < 1 || n > n_max() || k < 1 || k > n)
        throw std::out_of_range("StirlingTable::at: (n,k) outside the triangle");
    return rows_[n - 1][k - 1];
}

BigInt StirlingTable::value_or_zero(int n, int k) const {
    if (k < 1 || k > n) return 0;
    return at(n, k);
}

namespace {

std::mutex table_mutex;

const StirlingTable& shared_stirling() {
    static const StirlingTable table(kMaxStirlingN + 2);
    return table;
}

}  // namespace

BigInt stirling_unsigned(int n, int k) {
    if (n < 1 || n > kMaxStirlingN || k < 1 || k > n)
        throw std::out_of_range("stirling_unsigned: requires 1 <= k <= n <= 200");
    return shared_stirling().at(n, k);
}

IntPoly rising_factorial_poly(int n) {
    if (n < 0 || n > 100) throw std::domain_error("rising_factorial_poly: requires 0 <= n <= 100");
    IntPoly p = IntPoly::constant(1);
    for (int i = 1; i <= n; ++i) p = p * IntPoly({BigInt(i), 1});
    return p;
}

const IntPoly& expansion_poly_recurrence(int r) {
    if (r < 0 || r > kMaxExpansionOrder)
        throw std::domain_error("expansion_poly_recurrence: requires 0 <= r <= 200");
    // deque: references stay valid while other threads extend the cache
    static std::deque<IntPoly> cache;
    std::lock_guard<std::mutex> lock(table_mutex);
    if (cache.empty()) {
        cache.push_back(IntPoly::constant(1));
        cache.push_back(IntPoly::constant(1));
    }
    const IntPoly s_factor({0, 1});
    while (static_cast<int>(cache.size()) <= r) {
        const int m = static_cast<int>(cache.size());
        IntPoly next = cache[m - 1];
        next *= BigInt(m);
        IntPoly carry = s_factor * cache[m - 2];
        carry *= BigInt(m - 1);
        next += carry;
        cache.push_back(std::move(next));
    }
    return cache[r];
}

IntPoly expansion_poly_sum(int r) {
    if (r < 0 || r > kMaxExpansionOrder)
        throw std::domain_error("expansion_poly_sum: requires 0 <= r <= 200");
    IntPoly total;
    IntPoly rising = IntPoly::constant(1);  // (s+1)...(s+i), grown incrementally
    for (int i = 0; i <= r; ++i) {
        if (i > 0) rising = rising * IntPoly({BigInt(i), 1});
        IntPoly term = rising * IntPoly::monomial(r - i);
        BigInt c = binomial(r, i);
        if ((r - i) % 2 != 0) c = -c;
        term *= c;
        total += term;
    }
    return total;
}

std::vector<std::vector<BigInt>> expansion_coefficient_table(int r_max) {
    if (r_max < 1 || r_max > kMaxExpansionOrder)
        throw std::domain_error("expansion_coefficient_table: requires 1 <= r_max <= 200");
    std::vector<std::vector<BigInt>> a(r_max + 1);
    a[0] = {1};
    if (r_max >= 1) a[1] = {1};
    for (int r = 2; r <= r_max; ++r) {
        a[r].assign(r / 2 + 1, 0);
        for (int i = 0; i <= r / 2; ++i) {
            BigInt v = 0;
            if (i < static_cast<int>(a[r - 1].size())) v += r * a[r - 1][i];
            if (i >= 1 && i - 1 < static_cast<int>(a[r - 2].size())) v += (r - 1) * a[r - 2][i - 1];
            a[r][i] = std::move(v);
        }
    }
    // Cross-check against the weighted factorial-sum form.
    for (int r = 2; r <= r_max; ++r) {
        for (int k = 1; k <= r / 2; ++k) {
            BigInt sum = 0;
            BigInt tail_fact = 1;  // r!/m!, built downward from m = r
            for (int m = r; m >= 2 * k; --m) {
                sum += (m - 1) * a[m - 2][k - 1] * tail_fact;
                tail_fact *= m;
            }
            if (sum != a[r][k])
                throw std::logic_error("expansion_coefficient_table: factorial-sum identity failed");
        }
    }
    return a;
}

std::vector<RatPoly> egf_truncation(int order) {
    if (order < 1 || order > 60) throw std::domain_error("egf_truncation: requires 1 <= order <= 60");
    // A(x) = sum_k (-s)^k x^k / k!,  B(x) = sum_m (s+1)...(s+m) x^m / m!.
    std::vector<RatPoly> a_coef(order + 1), b_coef(order + 1);
    for (int k = 0; k <= order; ++k) {
        BigRat inv_fact(1, factorial(k));
        BigRat signed_inv = (k % 2 == 0) ? inv_fact : -inv_fact;
        std::vector<BigRat> mono(k + 1, 0);
        mono[k] = signed_inv;
        a_coef[k] = RatPoly(std::move(mono));
        RatPoly rise(rising_factorial_poly(k));
        rise *= inv_fact;
        b_coef[k] = std::move(rise);
    }
    std::vector<RatPoly> out(order + 1);
    for (int r = 0; r <= order; ++r) {
        RatPoly acc;
        for (int k = 0; k <= r; ++k) acc += a_coef[k] * b_coef[r - k];
        out[r] = std::move(acc);
    }
    return out;
}

namespace {

BigInt falling_factorial(int i, int l) {
    BigInt f = 1;
    for (int t = 0; t < l; ++t) f *= (i - t);
    return f;
}

}  // namespace

std::vector<BigRat> stirling_diagonal_fit(int j, int i_max) {
    if (j < 0 || j > 10) throw std::domain_error("stirling_diagonal_fit: requires 0 <= j <= 10");
    if (i_max < 2 * j + 2) throw std::domain_error("stirling_diagonal_fit: i_max must be >= 2j+2");
    const int m = j + 1;  // unknowns C_{l,j}, l = j..2j
    // Exact Gauss elimination on the window i = j..2j.
    std::vector<std::vector<BigRat>> aug(m, std::vector<BigRat>(m + 1));
    const auto& table = shared_stirling();
    for (int row = 0; row < m; ++row) {
        const int i = j + row;
        for (int col = 0; col < m; ++col) aug[row][col] = BigRat(falling_factorial(i, j + col));
        aug[row][m] = BigRat(table.value_or_zero(i + 1, i + 1 - j));
    }
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int row = col; row < m; ++row)
            if (aug[row][col] != 0) { pivot = row; break; }
        if (pivot < 0) throw std::logic_error("stirling_diagonal_fit: singular window system");
        std::swap(aug[col], aug[pivot]);
        for (int row = 0; row < m; ++row) {
            if (row == col || aug[row][col] == 0) continue;
            BigRat f = aug[row][col] / aug[col][col];
            for (int c2 = col; c2 <= m; ++c2) aug[row][c2] -= f * aug[col][c2];
        }
    }
    std::vector<BigRat> c(m);
    for (int row = 0; row < m; ++row) c[row] = aug[row][m] / aug[row][row];
    // Verify the fit across the long window.
    for (int i = 0; i <= i_max; ++i) {
        BigRat rhs = 0;
        for (int col = 0; col < m; ++col) rhs += c[col] * BigRat(falling_factorial(i, j + col));
        BigRat lhs(table.value_or_zero(i + 1, i + 1 - j));
        if (lhs != rhs)
            throw std::logic_error("stirling_diagonal_fit: nonzero residual at i = " + std::to_string(i));
    }
    return c;
}

BigInt alternating_stirling_sum(int r, int j) {
    if (r < 1 || r > 100 || j < 0)
        throw std::domain_error("alternating_stirling_sum: requires 1 <= r <= 100 and j >= 0");
    const auto& table = shared_stirling();
    BigInt sum = 0;
    for (int i = j; i <= r; ++i) {
        BigInt term = binomial(r, i) * table.value_or_zero(i + 1, i - j + 1);
        if ((r - i) % 2 != 0) term = -term;
        sum += term;
    }
    return sum;
}

namespace {

BigInt count_no_successor_permutations(int r) {
    // permutations w of {1..r+1} with w(i+1) != w(i)+1 for all i
    std::vector<int> perm(r + 1);
    std::iota(perm.begin(), perm.end(), 1);
    BigInt count = 0;
    do {
        bool ok = true;
        for (int i = 0; i + 1 <= r; ++i)
            if (perm[i + 1] == perm[i] + 1) { ok = false; break; }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

BigInt count_line_sum_matrices(int r, int target) {
    // r x r matrices over N with every row/col sum = target and at most
    // 2 nonzero entries per row; exhaustive over all (target+1)^(r^2).
    const int cells = r * r;
    std::vector<int> m(cells, 0);
    BigInt count = 0;
    while (true) {
        bool ok = true;
        for (int row = 0; row < r && ok; ++row) {
            int sum = 0, nonzero = 0;
            for (int col = 0; col < r; ++col) {
                sum += m[row * r + col];
                if (m[row * r + col] != 0) ++nonzero;
            }
            ok = (sum == target && nonzero <= 2);
        }
        for (int col = 0; col < r && ok; ++col) {
            int sum = 0;
            for (int row = 0; row < r; ++row) sum += m[row * r + col];
            ok = (sum == target);
        }
        if (ok) ++count;
        int pos = 0;
        while (pos < cells && m[pos] == target) m[pos++] = 0;
        if (pos == cells) break;
        ++m[pos];
    }
    return count;
}

BigInt det_int(std::vector<std::vector<long long>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 1) return m[0][0];
    if (n == 2) return BigInt(m[0][0]) * m[1][1] - BigInt(m[0][1]) * m[1][0];
    BigInt det = 0;
    for (int col = 0; col < n; ++col) {
        std::vector<std::vector<long long>> minor(n - 1, std::vector<long long>(n - 1));
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int jj = 0; jj < n; ++jj) {
                if (jj == col) continue;
                minor[i - 1][cc++] = m[i][jj];
            }
        }
        BigInt sub = det_int(minor) * m[0][col];
        det += (col % 2 == 0) ? sub : -sub;
    }
    return det;
}

BigRat sign_matrix_fourth_moment(int r) {
    // 2^{-r^2}/r! * sum over +-1 matrices of det^4
    const int cells = r * r;
    BigInt sum = 0;
    for (long mask = 0; mask < (1L << cells); ++mask) {
        std::vector<std::vector<long long>> m(r, std::vector<long long>(r));
        for (int c = 0; c < cells; ++c) m[c / r][c % r] = (mask >> c) & 1 ? 1 : -1;
        BigInt d = det_int(m);
        BigInt d2 = d * d;
        sum += d2 * d2;
    }
    BigInt denom = factorial(r);
    denom <<= cells;
    return BigRat(sum, denom);
}

}  // namespace

InterpretationReport brute_force_interpretations(int r, int s) {
    if (r < 0 || s < 0) throw std::domain_error("brute_force_interpretations: r, s must be >= 0");
    if (r > 6) throw std::domain_error("brute_force_interpretations: r exceeds every desk-scale limit");
    InterpretationReport rep;
    rep.r = r;
    rep.s = s;
    const IntPoly& pr = expansion_poly_recurrence(r);
    if (r <= 6) {
        rep.permutation_count = count_no_successor_permutations(r);
        rep.permutations_match = (*rep.permutation_count == pr.eval_int(1));
    }
    if (r >= 1 && r <= 2 && s <= 4) {
        rep.matrix_count = count_line_sum_matrices(r, 3 + 2 * s);
        rep.matrices_match = (*rep.matrix_count == factorial(r) * pr.eval_int(s));
    }
    if (r >= 1 && r <= 3) {
        rep.determinant_moment = sign_matrix_fourth_moment(r);
        rep.determinants_match = (*rep.determinant_moment == BigRat(pr.eval_int(2)));
    }
    return rep;
}

}  // namespace tmellin::poly
