#pragma once

#include <map>
#include <string>
#include <vector>

#include "specgap/rational.hpp"

namespace specgap {

/// Sparse multivariate polynomial with exact coefficients. Conventions used
/// below: potentials and vector fields live in d variables x_0..x_{d-1};
/// gap functions carry one extra trailing variable for the energy E.
class PolyD {
 public:
  using Mono = std::vector<int>;

  explicit PolyD(int nvars) : nvars_(nvars) {
    if (nvars < 1) throw std::invalid_argument("PolyD: nvars must be >= 1");
  }
  static PolyD constant(int nvars, const Rational& r) {
    PolyD p(nvars);
    p.addTerm(Mono(static_cast<size_t>(nvars), 0), r);
    return p;
  }
  static PolyD variable(int nvars, int i) {
    PolyD p(nvars);
    Mono m(static_cast<size_t>(nvars), 0);
    m.at(static_cast<size_t>(i)) = 1;
    p.addTerm(m, Rational(1));
    return p;
  }

  int nvars() const { return nvars_; }
  bool isZero() const { return terms_.empty(); }
  const std::map<Mono, Rational>& terms() const { return terms_; }
  Rational coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  void addTerm(const Mono& m, const Rational& c) {
    if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("PolyD: bad monomial");
    if (c.isZero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.isZero()) terms_.erase(it);
    }
  }

  PolyD& operator+=(const PolyD& o) {
    requireSameArity(o);
    for (const auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
  }
  PolyD& operator-=(const PolyD& o) {
    requireSameArity(o);
    for (const auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
  }
  friend PolyD operator+(PolyD a, const PolyD& b) { return a += b; }
  friend PolyD operator-(PolyD a, const PolyD& b) { return a -= b; }
  PolyD operator-() const {
    PolyD r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend PolyD operator*(const PolyD& a, const PolyD& b) {
    a.requireSameArity(b);
    PolyD r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m(ma);
        for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.addTerm(m, ca * cb);
      }
    return r;
  }
  friend PolyD operator*(const Rational& s, const PolyD& p) {
    PolyD r(p.nvars_);
    if (s.isZero()) return r;
    for (const auto& [m, c] : p.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  bool operator==(const PolyD& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  PolyD derivative(int var) const;
  int totalDegree() const;  // -1 for zero
  int degreeIn(int var) const;
  double eval(const std::vector<double>& pt) const;
  Rational evalExact(const std::vector<Rational>& pt) const;
  /// Same polynomial over a wider variable list (new variables appended).
  PolyD widened(int newNvars) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  void requireSameArity(const PolyD& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("PolyD: arity mismatch");
  }
  int nvars_;
  std::map<Mono, Rational> terms_;
};

/// Degree <= 2 vector fields whose Jacobian is (scalar) + (antisymmetric):
/// h^mu = c^mu + k x^mu + A^mu_nu x^nu - 1/2 l^mu |x|^2 + x^mu (l . x).
struct H0Family {
  int d = 0;
  std::vector<Rational> h0AtZero;           // c, size d
  Rational k{0};                            // dilation weight
  std::vector<std::vector<Rational>> A;     // antisymmetric d x d
  std::vector<Rational> l;                  // size d
};

/// Dimension of the family above: d + 1 + d(d-1)/2 + d = (d^2 + 3d + 2)/2.
int h0ParamCount(int d);

std::vector<PolyD> buildH0(const H0Family& fam);

/// Divergence-isotropy conditions: all diagonal Jacobian entries equal and
/// the off-diagonal part antisymmetric.
bool checkConstraints(const std::vector<PolyD>& h);

struct Nullspace {
  int dim = 0;
  std::vector<std::vector<PolyD>> basis;  // each entry is a d-component field
  int maxBasisDegree = -1;
};

/// All polynomial fields of degree <= maxDeg satisfying checkConstraints,
/// found by exact elimination on the coefficient equations.
Nullspace constraintNullspace(int d, int maxDeg);

/// Gap function for the structured family, in variables (x_0..x_{d-1}, E):
/// F2 = 4 (E - V) (k + l . x) - 2 h . grad V.
PolyD buildF2d(const H0Family& fam, const PolyD& V);

/// Gap function for an arbitrary constrained field h, via the divergence
/// form ((2-d)/(2d)) Lap(div h) - (2/d) v (div h) - h . grad v, v = 2V - 2E.
PolyD buildF2dGeneral(const std::vector<PolyD>& h, const PolyD& V);

/// Partial derivatives of F2 with respect to each family parameter, in the
/// order: c_0..c_{d-1}, k, A_{mu nu} (mu < nu, row-major), l_0..l_{d-1}.
std::vector<PolyD> lambdaGradientF2d(const PolyD& V);

struct CriticalPoint {
  bool converged = false;
  std::vector<double> x;
  double E = 0;
  double residual = 0;   // sup norm of the gradient system at the solution
  double gradNorm = 0;   // |grad V(x)|
  double eMinusV = 0;    // E - V(x)
};

/// Solves the joint zero set of all parameter gradients of F2 from each
/// starting guess; solutions are critical points of V at energy E = V(x).
std::vector<CriticalPoint> criticalReduction(const PolyD& V,
                                             const std::vector<std::vector<double>>& guesses);

PolyD isotropicQuadratic(int d);  // 1/2 |x|^2
PolyD productQuartic(int d);      // sum_mu ((x^mu)^2 - 1)^2

/// Integral of F2 over the classically allowed region {V <= E} in d = 2.
/// Vanishes identically for every constrained h; returned for inspection.
/// Throws if the region is unbounded.
double nullResult2d(const PolyD& V, const std::vector<PolyD>& h, double E);

}  // namespace specgap
