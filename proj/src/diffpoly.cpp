#include "specgap/diffpoly.hpp"

#include <sstream>

namespace specgap {

std::string symbolStr(const Symbol& s) {
  std::string base;
  switch (s.kind) {
    case SymbolKind::Test: base = "a" + std::to_string(s.index); break;
    case SymbolKind::V: base = "v"; break;
    case SymbolKind::U: base = s.derivOrder == 0 ? "(V-E)" : "V"; break;
  }
  if (s.kind == SymbolKind::U && s.derivOrder == 0) return base;
  if (s.derivOrder <= 3) return base + std::string(static_cast<size_t>(s.derivOrder), '\'');
  return base + "^(" + std::to_string(s.derivOrder) + ")";
}

DiffPoly DiffPoly::derive() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    for (const auto& [s, e] : m) {
      DiffMonomial dm = m;
      if (e == 1)
        dm.erase(s);
      else
        dm[s] = e - 1;
      Symbol ds = s;
      ds.derivOrder += 1;
      dm[ds] += 1;
      r.addTerm(dm, Rational(e) * c);
    }
  }
  return r;
}

DiffPoly DiffPoly::toPotentialForm() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    DiffMonomial nm;
    Rational nc = c;
    for (const auto& [s, e] : m) {
      if (s.kind == SymbolKind::V) {
        nm[{SymbolKind::U, 0, s.derivOrder}] += e;
        nc *= Rational(2).pow(static_cast<unsigned>(e));
      } else {
        nm[s] += e;
      }
    }
    r.addTerm(nm, nc);
  }
  return r;
}

std::string prettyForm(const DiffPoly& p) {
  if (p.isZero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) out << " + ";
    first = false;
    out << "(" << c.str() << ")";
    auto emit = [&out](const Symbol& s, int e) {
      out << "*" << symbolStr(s);
      if (e > 1) out << "^" << e;
    };
    for (const auto& [s, e] : m)
      if (s.kind != SymbolKind::Test) emit(s, e);
    for (const auto& [s, e] : m)
      if (s.kind == SymbolKind::Test) emit(s, e);
  }
  return out.str();
}

std::string DiffPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) out << "-";
      first = false;
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
    }
    bool needCoeff = !(a == Rational(1)) || m.empty();
    if (needCoeff) out << a.str();
    bool firstFactor = !needCoeff;
    for (const auto& [s, e] : m) {
      if (!firstFactor) out << "*";
      firstFactor = false;
      out << symbolStr(s);
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

}  // namespace specgap
