#include "tmellin/exact_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace tmellin {

const BigInt IntPoly::zero_ = 0;
const BigRat RatPoly::zero_ = 0;

IntPoly IntPoly::monomial(int power, BigInt c) {
    if (power < 0) throw std::domain_error("IntPoly::monomial: negative power");
    std::vector<BigInt> v(power + 1, 0);
    v[power] = std::move(c);
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
}

const BigInt& IntPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero_;
    return coeffs_[k];
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    std::vector<BigInt> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return IntPoly(std::move(out));
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
    for (auto& v : coeffs_) v *= c;
    trim();
    return *this;
}

BigInt IntPoly::eval_int(const BigInt& s) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double IntPoly::eval(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * s + it->convert_to<double>();
    return acc;
}

std::string IntPoly::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ' ';
        os << coeffs_[i];
    }
    return os.str();
}

RatPoly::RatPoly(const IntPoly& p) {
    coeffs_.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) coeffs_.emplace_back(c);
    trim();
}

void RatPoly::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
}

const BigRat& RatPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero_;
    return coeffs_[k];
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    std::vector<BigRat> out(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return RatPoly(std::move(out));
}

RatPoly& RatPoly::operator*=(const BigRat& c) {
    for (auto& v : coeffs_) v *= c;
    trim();
    return *this;
}

BigRat RatPoly::eval_rat(const BigRat& s) const {
    BigRat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

std::string RatPoly::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) os << ' ';
        os << coeffs_[i];
    }
    return os.str();
}

}  // namespace tmellin
