#pragma once

#include <map>
#include <string>
#include <utility>

#include "specgap/diffpoly.hpp"
#include "specgap/ladder.hpp"

namespace specgap {

/// Polynomial in the formal solution pair (phi', phi) with DiffPoly
/// coefficients, subject to phi'' = v phi. Exponent pair key is
/// (phi' exponent, phi exponent).
class PhiPoly {
 public:
  PhiPoly() = default;

  /// P_a = sum_n a_n phi'^{N-n} phi^n.
  static PhiPoly fromOpVector(const OpVector& a);

  void addTerm(int dphiExp, int phiExp, const DiffPoly& c);
  DiffPoly coeff(int dphiExp, int phiExp) const;
  bool isZero() const { return terms_.empty(); }
  const std::map<std::pair<int, int>, DiffPoly>& terms() const { return terms_; }

  PhiPoly& operator+=(const PhiPoly& o);
  PhiPoly& operator-=(const PhiPoly& o);
  friend PhiPoly operator+(PhiPoly a, const PhiPoly& b) { return a += b; }
  friend PhiPoly operator-(PhiPoly a, const PhiPoly& b) { return a -= b; }
  friend bool operator==(const PhiPoly& a, const PhiPoly& b) { return a.terms_ == b.terms_; }

  /// D(c phi'^i phi^j) = c' phi'^i phi^j + i c v phi'^{i-1} phi^{j+1}
  ///                   + j c phi'^{i+1} phi^{j-1}.
  PhiPoly totalDerivative() const;

  /// Projection onto phi-degree zero: sum_k (-phi)^k/k! d^k_phi kills every
  /// term with a positive phi exponent and fixes the rest. Idempotent.
  PhiPoly pi0() const;

  std::string str() const;

 private:
  std::map<std::pair<int, int>, DiffPoly> terms_;
};

inline PhiPoly pi0Reduce(const PhiPoly& p) { return p.pi0(); }

}  // namespace specgap
