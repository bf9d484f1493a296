#ifndef TMELLIN_EXACT_POLY_HPP
#define TMELLIN_EXACT_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace tmellin {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;  // kept in lowest terms

// Dense exact polynomial over big integers; coefficient index = power.
// Trailing zero coefficients are trimmed, so degree() is the index of the
// last nonzero coefficient (the zero polynomial has one coefficient, 0).
class IntPoly {
public:
    IntPoly() : coeffs_{0} {}
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    static IntPoly constant(BigInt c) { return IntPoly({std::move(c)}); }
    static IntPoly monomial(int power, BigInt c = 1);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    const BigInt& coeff(int k) const;  // 0 outside range
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly operator*(const IntPoly& o) const;
    IntPoly& operator*=(const BigInt& c);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

    BigInt eval_int(const BigInt& s) const;
    double eval(double s) const;  // Horner in double; valid while coefficients fit
    std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
    static const BigInt zero_;
};

// Dense exact polynomial over rationals (same conventions).
class RatPoly {
public:
    RatPoly() : coeffs_{0} {}
    explicit RatPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    explicit RatPoly(const IntPoly& p);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    const BigRat& coeff(int k) const;
    const std::vector<BigRat>& coeffs() const { return coeffs_; }

    RatPoly& operator+=(const RatPoly& o);
    RatPoly operator*(const RatPoly& o) const;
    RatPoly& operator*=(const BigRat& c);
    bool operator==(const RatPoly& o) const { return coeffs_ == o.coeffs_; }

    BigRat eval_rat(const BigRat& s) const;
    std::string to_string() const;

private:
    void trim();
    std::vector<BigRat> coeffs_;
    static const BigRat zero_;
};

}  // namespace tmellin

#endif
