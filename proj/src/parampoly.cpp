#include "specgap/parampoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace specgap {

ParamPoly ParamPoly::lambda(int arity, int i) {
  if (i < 0 || i >= arity) throw std::out_of_range("ParamPoly::lambda: index out of range");
  return monomial(arity, Rational(1), 0, 0, {{i, 1}});
}

ParamPoly ParamPoly::monomial(int arity, const Rational& c, int xExp, int eExp,
                              const std::map<int, int>& lamExp) {
  ParamPoly p(arity);
  PMono m{xExp, eExp, std::vector<int>(static_cast<size_t>(arity), 0)};
  for (const auto& [i, e] : lamExp) {
    if (i < 0 || i >= arity) throw std::out_of_range("ParamPoly::monomial: lambda index");
    m.lam[static_cast<size_t>(i)] = e;
  }
  p.addTerm(m, c);
  return p;
}

ParamPoly ParamPoly::fromPoly1(int arity, const Poly1& p) {
  ParamPoly r(arity);
  for (int k = 0; k <= p.degree(); ++k)
    r.addTerm(PMono{k, 0, std::vector<int>(static_cast<size_t>(arity), 0)}, p.coeff(k));
  return r;
}

void ParamPoly::addTerm(const PMono& m, const Rational& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
  if (arity_ != o.arity_) throw std::invalid_argument("ParamPoly: arity mismatch");
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
  if (arity_ != o.arity_) throw std::invalid_argument("ParamPoly: arity mismatch");
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

ParamPoly ParamPoly::operator-() const {
  ParamPoly r(arity_);
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

ParamPoly operator*(const Rational& s, const ParamPoly& p) {
  ParamPoly r(p.arity_);
  if (s.isZero()) return r;
  for (const auto& [m, c] : p.terms_) r.terms_[m] = s * c;
  return r;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
  if (a.arity_ != b.arity_) throw std::invalid_argument("ParamPoly: arity mismatch");
  ParamPoly r(a.arity_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      PMono m = ma;
      m.xExp += mb.xExp;
      m.eExp += mb.eExp;
      for (size_t i = 0; i < m.lam.size(); ++i) m.lam[i] += mb.lam[i];
      r.addTerm(m, ca * cb);
    }
  return r;
}

ParamPoly ParamPoly::dx() const {
  ParamPoly r(arity_);
  for (const auto& [m, c] : terms_) {
    if (m.xExp == 0) continue;
    PMono dm = m;
    dm.xExp -= 1;
    r.addTerm(dm, Rational(m.xExp) * c);
  }
  return r;
}

ParamPoly ParamPoly::dE() const {
  ParamPoly r(arity_);
  for (const auto& [m, c] : terms_) {
    if (m.eExp == 0) continue;
    PMono dm = m;
    dm.eExp -= 1;
    r.addTerm(dm, Rational(m.eExp) * c);
  }
  return r;
}

ParamPoly ParamPoly::dLambda(int i) const {
  if (i < 0 || i >= arity_) throw std::out_of_range("ParamPoly::dLambda: index");
  ParamPoly r(arity_);
  for (const auto& [m, c] : terms_) {
    int e = m.lam[static_cast<size_t>(i)];
    if (e == 0) continue;
    PMono dm = m;
    dm.lam[static_cast<size_t>(i)] -= 1;
    r.addTerm(dm, Rational(e) * c);
  }
  return r;
}

int ParamPoly::maxDegX() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.xExp);
  return d;
}

int ParamPoly::maxDegE() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.eExp);
  return d;
}

bool ParamPoly::isLinearHomogeneousInLambda() const {
  for (const auto& [m, c] : terms_) {
    int total = 0;
    for (int e : m.lam) total += e;
    if (total != 1) return false;
  }
  return true;
}

std::vector<double> ParamPoly::evalEL(double E, const std::vector<double>& lam) const {
  if (static_cast<int>(lam.size()) != arity_)
    throw std::invalid_argument("ParamPoly::evalEL: lambda size");
  std::vector<double> c(static_cast<size_t>(std::max(maxDegX(), 0)) + 1, 0.0);
  if (isZero()) return c;
  for (const auto& [m, coeff] : terms_) {
    double w = coeff.toDouble();
    for (int i = 0; i < m.eExp; ++i) w *= E;
    for (size_t i = 0; i < lam.size(); ++i)
      for (int j = 0; j < m.lam[i]; ++j) w *= lam[i];
    c[static_cast<size_t>(m.xExp)] += w;
  }
  return c;
}

Poly1 ParamPoly::evalELExact(const Rational& E, const std::vector<Rational>& lam) const {
  if (static_cast<int>(lam.size()) != arity_)
    throw std::invalid_argument("ParamPoly::evalELExact: lambda size");
  std::vector<Rational> c(static_cast<size_t>(std::max(maxDegX(), 0)) + 1);
  for (const auto& [m, coeff] : terms_) {
    Rational w = coeff;
    if (m.eExp > 0) w *= E.pow(static_cast<unsigned>(m.eExp));
    for (size_t i = 0; i < lam.size(); ++i)
      if (m.lam[i] > 0) w *= lam[i].pow(static_cast<unsigned>(m.lam[i]));
    c[static_cast<size_t>(m.xExp)] += w;
  }
  return Poly1(std::move(c));
}

double ParamPoly::evalAll(double x, double E, const std::vector<double>& lam) const {
  std::vector<double> c = evalEL(E, lam);
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string ParamPoly::str() const {
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
    std::vector<std::string> factors;
    auto pushPow = [&factors](const std::string& base, int e) {
      if (e == 1)
        factors.push_back(base);
      else if (e > 1)
        factors.push_back(base + "^" + std::to_string(e));
    };
    pushPow("x", m.xExp);
    pushPow("E", m.eExp);
    for (size_t i = 0; i < m.lam.size(); ++i) pushPow("l" + std::to_string(i + 1), m.lam[i]);
    bool needCoeff = !(a == Rational(1)) || factors.empty();
    if (needCoeff) out << a.str();
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i > 0 || needCoeff) out << "*";
      out << factors[i];
    }
  }
  return out.str();
}

ParamPoly substitute(const DiffPoly& dp, const Poly1& V,
                     const std::map<int, ParamPoly>& assignments, int arity) {
  ParamPoly result(arity);
  for (const auto& [mono, coeff] : dp.terms()) {
    ParamPoly term = ParamPoly::constant(arity, coeff);
    for (const auto& [sym, exp] : mono) {
      ParamPoly factor(arity);
      switch (sym.kind) {
        case SymbolKind::V: {
          // v = 2(V - E), so v^(k) = 2 V^(k) for k >= 1
          factor = ParamPoly::fromPoly1(arity, Rational(2) * V.derivative(sym.derivOrder));
          if (sym.derivOrder == 0) factor -= Rational(2) * ParamPoly::E(arity);
          break;
        }
        case SymbolKind::Test: {
          auto it = assignments.find(sym.index);
          if (it == assignments.end())
            throw std::out_of_range("substitute: no assignment for component a" +
                                    std::to_string(sym.index));
          factor = it->second.dx(sym.derivOrder);
          break;
        }
        case SymbolKind::U:
          throw std::invalid_argument("substitute: display-only symbol in input");
      }
      for (int i = 0; i < exp; ++i) term = term * factor;
    }
    result += term;
  }
  return result;
}

}  // namespace specgap
