#include "specgap/phipoly.hpp"

#include <sstream>

namespace specgap {

PhiPoly PhiPoly::fromOpVector(const OpVector& a) {
  const int N = static_cast<int>(a.size()) - 1;
  PhiPoly p;
  for (int n = 0; n <= N; ++n) p.addTerm(N - n, n, a[static_cast<size_t>(n)]);
  return p;
}

void PhiPoly::addTerm(int dphiExp, int phiExp, const DiffPoly& c) {
  if (c.isZero()) return;
  auto key = std::make_pair(dphiExp, phiExp);
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

DiffPoly PhiPoly::coeff(int dphiExp, int phiExp) const {
  auto it = terms_.find({dphiExp, phiExp});
  return it == terms_.end() ? DiffPoly() : it->second;
}

PhiPoly& PhiPoly::operator+=(const PhiPoly& o) {
  for (const auto& [k, c] : o.terms_) addTerm(k.first, k.second, c);
  return *this;
}

PhiPoly& PhiPoly::operator-=(const PhiPoly& o) {
  for (const auto& [k, c] : o.terms_) addTerm(k.first, k.second, -c);
  return *this;
}

PhiPoly PhiPoly::totalDerivative() const {
  static const DiffPoly kV = DiffPoly::symbol(vSym());
  PhiPoly r;
  for (const auto& [k, c] : terms_) {
    const auto [i, j] = k;
    r.addTerm(i, j, c.derive());
    if (i >= 1) r.addTerm(i - 1, j + 1, Rational(i) * (kV * c));
    if (j >= 1) r.addTerm(i + 1, j - 1, Rational(j) * c);
  }
  return r;
}

PhiPoly PhiPoly::pi0() const {
  PhiPoly r;
  for (const auto& [k, c] : terms_)
    if (k.second == 0) r.addTerm(k.first, 0, c);
  return r;
}

std::string PhiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")";
    if (k.first > 0) {
      out << "*phi'";
      if (k.first > 1) out << "^" << k.first;
    }
    if (k.second > 0) {
      out << "*phi";
      if (k.second > 1) out << "^" << k.second;
    }
  }
  return out.str();
}

}  // namespace specgap
