#include "specgap/poly1.hpp"

#include <sstream>

namespace specgap {

std::string Poly1::str(const std::string& var) const {
  if (isZero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeff(k);
    if (c.isZero()) continue;
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) out << "-";
      first = false;
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    bool needCoeff = !(a == Rational(1)) || k == 0;
    if (needCoeff) out << a.str();
    if (k >= 1) {
      if (needCoeff) out << "*";
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

}  // namespace specgap
