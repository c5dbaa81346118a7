#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specgap/rational.hpp"

namespace specgap {

/// Univariate polynomial in x with exact rational coefficients.
/// Canonical form: no trailing zero coefficients; the zero polynomial has an
/// empty coefficient list and degree() == -1.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly1 constant(const Rational& r) { return Poly1({r}); }
  static Poly1 monomial(const Rational& coeff, int k) {
    std::vector<Rational> c(static_cast<size_t>(k) + 1);
    c.back() = coeff;
    return Poly1(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool isZero() const { return c_.empty(); }
  const Rational& coeff(int k) const {
    static const Rational kZero;
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
  }
  const Rational& leading() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly1 operator-() const {
    Poly1 r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return Poly1(std::move(c));
  }
  friend Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.isZero() || b.isZero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly1(std::move(c));
  }
  friend Poly1 operator*(const Rational& s, const Poly1& p) {
    if (s.isZero()) return {};
    Poly1 r = p;
    for (auto& a : r.c_) a *= s;
    return r;
  }

  friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }

  Poly1 derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
    return Poly1(std::move(d));
  }

  Poly1 derivative(int k) const {
    Poly1 p = *this;
    for (int i = 0; i < k; ++i) p = p.derivative();
    return p;
  }

  Rational eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->toDouble();
    return acc;
  }

  /// Euclidean division: returns (quotient, remainder) with
  /// *this == quotient * divisor + remainder, deg(remainder) < deg(divisor).
  std::pair<Poly1, Poly1> divmod(const Poly1& divisor) const {
    if (divisor.isZero()) throw std::domain_error("Poly1: division by zero polynomial");
    Poly1 rem = *this;
    std::vector<Rational> q;
    const int dd = divisor.degree();
    if (rem.degree() >= dd) q.resize(static_cast<size_t>(rem.degree() - dd) + 1);
    while (!rem.isZero() && rem.degree() >= dd) {
      const int shift = rem.degree() - dd;
      Rational factor = rem.leading() / divisor.leading();
      q[static_cast<size_t>(shift)] = factor;
      rem = rem - Poly1::monomial(factor, shift) * divisor;
    }
    return {Poly1(std::move(q)), rem};
  }

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().isZero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace specgap
