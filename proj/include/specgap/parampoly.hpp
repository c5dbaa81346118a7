#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "specgap/diffpoly.hpp"
#include "specgap/poly1.hpp"
#include "specgap/rational.hpp"

namespace specgap {

/// Monomial x^xExp * E^eExp * lambda_1^lam[0] * ... * lambda_p^lam[p-1].
struct PMono {
  int xExp = 0;
  int eExp = 0;
  std::vector<int> lam;  // size == arity of the owning ParamPoly

  friend auto operator<=>(const PMono&, const PMono&) = default;
};

/// Polynomial in x, E and family parameters lambda_1..lambda_p with exact
/// rational coefficients. All operands of a binary op must share the arity.
class ParamPoly {
 public:
  ParamPoly() = default;
  explicit ParamPoly(int arity) : arity_(arity) {}

  static ParamPoly constant(int arity, const Rational& r) {
    ParamPoly p(arity);
    if (!r.isZero()) p.terms_[PMono{0, 0, std::vector<int>(static_cast<size_t>(arity), 0)}] = r;
    return p;
  }
  static ParamPoly x(int arity) { return monomial(arity, Rational(1), 1, 0, {}); }
  static ParamPoly E(int arity) { return monomial(arity, Rational(1), 0, 1, {}); }
  /// i is zero-based; lambda(3, 0) is lambda_1 of a 3-parameter family.
  static ParamPoly lambda(int arity, int i);
  static ParamPoly monomial(int arity, const Rational& c, int xExp, int eExp,
                            const std::map<int, int>& lamExp);
  static ParamPoly fromPoly1(int arity, const Poly1& p);

  int arity() const { return arity_; }
  bool isZero() const { return terms_.empty(); }
  const std::map<PMono, Rational>& terms() const { return terms_; }

  void addTerm(const PMono& m, const Rational& c);
  ParamPoly& operator+=(const ParamPoly& o);
  ParamPoly& operator-=(const ParamPoly& o);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  ParamPoly operator-() const;
  friend ParamPoly operator*(const Rational& s, const ParamPoly& p);
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  ParamPoly dx() const;
  ParamPoly dx(int k) const {
    ParamPoly p = *this;
    for (int i = 0; i < k; ++i) p = p.dx();
    return p;
  }
  ParamPoly dE() const;
  ParamPoly dLambda(int i) const;

  int maxDegX() const;
  int maxDegE() const;
  /// True when every term is degree one in (lambda_1..lambda_p) jointly.
  bool isLinearHomogeneousInLambda() const;

  /// Collapses E and lambda to numbers; returns dense x-coefficients c[0..degX].
  std::vector<double> evalEL(double E, const std::vector<double>& lam) const;
  Poly1 evalELExact(const Rational& E, const std::vector<Rational>& lam) const;
  double evalAll(double x, double E, const std::vector<double>& lam) const;

  std::string str() const;

 private:
  int arity_ = 0;
  std::map<PMono, Rational> terms_;
};

/// Replaces v^(k) by the derivatives of 2(V(x) - E) and a_n^(k) by the k-th
/// x-derivative of the assigned family polynomial. Throws std::out_of_range
/// when a referenced component has no assignment.
ParamPoly substitute(const DiffPoly& dp, const Poly1& V,
                     const std::map<int, ParamPoly>& assignments, int arity);

}  // namespace specgap
