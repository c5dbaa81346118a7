#pragma once

#include <compare>
#include <map>
#include <string>

#include "specgap/rational.hpp"

namespace specgap {

/// Formal symbols of the differential ring: test-function components a_n,
/// the reduced potential v, and u (= V - E, used only for display after
/// substituting v = 2u). derivOrder counts total-derivative applications.
enum class SymbolKind { Test, V, U };

struct Symbol {
  SymbolKind kind = SymbolKind::V;
  int index = 0;       // component n of a_n; 0 for v and u
  int derivOrder = 0;  // k in a_n^(k), v^(k)

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

inline Symbol testSym(int n, int k = 0) { return {SymbolKind::Test, n, k}; }
inline Symbol vSym(int k = 0) { return {SymbolKind::V, 0, k}; }

std::string symbolStr(const Symbol& s);

/// Product of symbols with positive integer exponents, kept sorted by symbol.
using DiffMonomial = std::map<Symbol, int>;

/// Polynomial over the differential ring with exact rational coefficients.
/// Canonical form: no zero coefficients stored, monomials sorted.
class DiffPoly {
 public:
  DiffPoly() = default;
  static DiffPoly constant(const Rational& r) {
    DiffPoly p;
    if (!r.isZero()) p.terms_[{}] = r;
    return p;
  }
  static DiffPoly symbol(const Symbol& s) {
    DiffPoly p;
    p.terms_[{{s, 1}}] = Rational(1);
    return p;
  }

  bool isZero() const { return terms_.empty(); }
  const std::map<DiffMonomial, Rational>& terms() const { return terms_; }
  Rational coeff(const DiffMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational() : it->second;
  }

  void addTerm(const DiffMonomial& m, const Rational& c) {
    if (c.isZero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  DiffPoly& operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
  }
  DiffPoly& operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
  }
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  DiffPoly operator-() const {
    DiffPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  friend DiffPoly operator*(const Rational& s, const DiffPoly& p) {
    DiffPoly r;
    if (s.isZero()) return r;
    for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
    return r;
  }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        DiffMonomial m = ma;
        for (const auto& [s, e] : mb) m[s] += e;
        r.addTerm(m, ca * cb);
      }
    return r;
  }

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

  /// Total x-derivative: Leibniz over each monomial, bumping derivOrder.
  DiffPoly derive() const;
  DiffPoly derive(int k) const {
    DiffPoly p = *this;
    for (int i = 0; i < k; ++i) p = p.derive();
    return p;
  }

  /// Replaces every v^(k) with 2*u^(k); u renders as (V-E), V', V'', ...
  DiffPoly toPotentialForm() const;

  std::string str() const;

 private:
  std::map<DiffMonomial, Rational> terms_;
};

/// Fixed display form for golden files and the derive command: terms joined
/// by " + " with parenthesized signed coefficients, highest a-derivative
/// first, v/V factors printed before test-function factors.
std::string prettyForm(const DiffPoly& p);

}  // namespace specgap
