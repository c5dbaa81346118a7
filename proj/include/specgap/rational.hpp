#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace specgap {

/// Exact rational number, always kept in lowest terms with positive
/// denominator. Thin value wrapper around GMP's mpq_class; every coefficient
/// of the symbolic layer lives in this type.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(const mpz_class& n) : q_(n) {}

  /// Exact conversion: every finite double is a dyadic rational.
  static Rational fromDouble(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    Rational r;
    mpq_set_d(r.q_.get_mpq_t(), x);
    return r;
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool isZero() const { return sgn(q_) == 0; }
  bool isInteger() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  double toDouble() const { return q_.get_d(); }
  std::string str() const {
    if (isInteger()) return q_.get_num().get_str();
    return q_.get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.isZero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational pow(unsigned e) const {
    Rational r(1);
    Rational base = *this;
    while (e) {
      if (e & 1u) r *= base;
      base *= base;
      e >>= 1u;
    }
    return r;
  }

 private:
  mpq_class q_;
};

inline Rational operator*(long a, const Rational& b) { return Rational(a) * b; }

}  // namespace specgap
