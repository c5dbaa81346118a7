#include "specgap/multidim.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace specgap {

PolyD PolyD::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::invalid_argument("PolyD::derivative: bad variable");
  PolyD r(nvars_);
  for (const auto& [m, c] : terms_) {
    int e = m[static_cast<size_t>(var)];
    if (e == 0) continue;
    Mono m2(m);
    m2[static_cast<size_t>(var)] = e - 1;
    r.addTerm(m2, Rational(e) * c);
  }
  return r;
}

int PolyD::totalDegree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

int PolyD::degreeIn(int var) const {
  int deg = -1;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m[static_cast<size_t>(var)]);
  return terms_.empty() ? -1 : deg;
}

double PolyD::eval(const std::vector<double>& pt) const {
  if (static_cast<int>(pt.size()) != nvars_) throw std::invalid_argument("PolyD::eval: bad point");
  double acc = 0;
  for (const auto& [m, c] : terms_) {
    double t = c.toDouble();
    for (size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) t *= pt[i];
    acc += t;
  }
  return acc;
}

Rational PolyD::evalExact(const std::vector<Rational>& pt) const {
  if (static_cast<int>(pt.size()) != nvars_)
    throw std::invalid_argument("PolyD::evalExact: bad point");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < m.size(); ++i)
      for (int e = 0; e < m[i]; ++e) t *= pt[i];
    acc += t;
  }
  return acc;
}

PolyD PolyD::widened(int newNvars) const {
  if (newNvars < nvars_) throw std::invalid_argument("PolyD::widened: cannot shrink");
  PolyD r(newNvars);
  for (const auto& [m, c] : terms_) {
    Mono m2(m);
    m2.resize(static_cast<size_t>(newNvars), 0);
    r.addTerm(m2, c);
  }
  return r;
}

std::string PolyD::str(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != nvars_) throw std::invalid_argument("PolyD::str: names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool firstTerm = true;
  for (const auto& [m, c] : terms_) {
    if (!firstTerm) os << " + ";
    firstTerm = false;
    os << c.str();
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << "*" << names[i];
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

int h0ParamCount(int d) {
  if (d < 1) throw std::invalid_argument("h0ParamCount: d must be >= 1");
  return (d * d + 3 * d + 2) / 2;
}

std::vector<PolyD> buildH0(const H0Family& fam) {
  const int d = fam.d;
  if (d < 1) throw std::invalid_argument("buildH0: d must be >= 1");
  if (static_cast<int>(fam.h0AtZero.size()) != d || static_cast<int>(fam.l.size()) != d ||
      static_cast<int>(fam.A.size()) != d)
    throw std::invalid_argument("buildH0: component size mismatch");
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(fam.A[static_cast<size_t>(i)].size()) != d)
      throw std::invalid_argument("buildH0: A is not d x d");
    for (int j = 0; j <= i; ++j) {
      const Rational& a = fam.A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      const Rational& b = fam.A[static_cast<size_t>(j)][static_cast<size_t>(i)];
      if (!((a + b).isZero())) throw std::invalid_argument("buildH0: A must be antisymmetric");
    }
  }
  std::vector<PolyD> x;
  for (int i = 0; i < d; ++i) x.push_back(PolyD::variable(d, i));
  PolyD norm2(d), ldotx(d);
  for (int i = 0; i < d; ++i) {
    norm2 += x[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
    ldotx += fam.l[static_cast<size_t>(i)] * x[static_cast<size_t>(i)];
  }
  std::vector<PolyD> h;
  for (int mu = 0; mu < d; ++mu) {
    PolyD comp = PolyD::constant(d, fam.h0AtZero[static_cast<size_t>(mu)]);
    comp += fam.k * x[static_cast<size_t>(mu)];
    for (int nu = 0; nu < d; ++nu)
      comp += fam.A[static_cast<size_t>(mu)][static_cast<size_t>(nu)] * x[static_cast<size_t>(nu)];
    comp += Rational(-1, 2) * (fam.l[static_cast<size_t>(mu)] * norm2);
    comp += x[static_cast<size_t>(mu)] * ldotx;
    h.push_back(comp);
  }
  return h;
}

bool checkConstraints(const std::vector<PolyD>& h) {
  const int d = static_cast<int>(h.size());
  if (d < 1) return false;
  for (const auto& comp : h)
    if (comp.nvars() != d) return false;
  PolyD diag0 = h[0].derivative(0);
  for (int mu = 1; mu < d; ++mu)
    if (!(h[static_cast<size_t>(mu)].derivative(mu) == diag0)) return false;
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu) {
      PolyD sum = h[static_cast<size_t>(nu)].derivative(mu) +
                  h[static_cast<size_t>(mu)].derivative(nu);
      if (!sum.isZero()) return false;
    }
  return true;
}

namespace {

std::vector<PolyD::Mono> monomialsUpTo(int d, int maxDeg) {
  std::vector<PolyD::Mono> out;
  PolyD::Mono cur(static_cast<size_t>(d), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<size_t>(pos)] = e;
      rec(pos + 1, left - e);
    }
    cur[static_cast<size_t>(pos)] = 0;
  };
  rec(0, maxDeg);
  std::sort(out.begin(), out.end(), [](const PolyD::Mono& a, const PolyD::Mono& b) {
    int sa = 0, sb = 0;
    for (int e : a) sa += e;
    for (int e : b) sb += e;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

using SparseRow = std::map<int, Rational>;

/// In-place reduced row echelon form over the rationals; returns pivot
/// column -> row index.
std::map<int, size_t> rref(std::vector<SparseRow>& rows) {
  std::map<int, size_t> pivots;
  std::vector<SparseRow> kept;
  for (SparseRow row : rows) {
    for (;;) {
      while (!row.empty() && row.begin()->second.isZero()) row.erase(row.begin());
      if (row.empty()) break;
      auto pit = pivots.find(row.begin()->first);
      if (pit == pivots.end()) break;
      const SparseRow& pr = kept[pit->second];
      Rational f = row.begin()->second;
      for (const auto& [c, v] : pr) {
        auto [it, inserted] = row.emplace(c, -f * v);
        if (!inserted) {
          it->second -= f * v;
          if (it->second.isZero()) row.erase(it);
        }
      }
    }
    if (row.empty()) continue;
    Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    int pcol = row.begin()->first;
    // clear this column from earlier rows
    for (auto& [col, ri] : pivots) {
      SparseRow& r0 = kept[ri];
      auto it = r0.find(pcol);
      if (it == r0.end()) continue;
      Rational f = it->second;
      for (const auto& [c, v] : row) {
        auto [jt, inserted] = r0.emplace(c, -f * v);
        if (!inserted) {
          jt->second -= f * v;
          if (jt->second.isZero()) r0.erase(jt);
        }
      }
    }
    pivots.emplace(pcol, kept.size());
    kept.push_back(std::move(row));
  }
  rows = std::move(kept);
  return pivots;
}

}  // namespace

Nullspace constraintNullspace(int d, int maxDeg) {
  if (d < 1 || maxDeg < 0) throw std::invalid_argument("constraintNullspace: bad arguments");
  auto monos = monomialsUpTo(d, maxDeg);
  std::map<PolyD::Mono, int> monoIdx;
  for (size_t i = 0; i < monos.size(); ++i) monoIdx.emplace(monos[i], static_cast<int>(i));
  const int nm = static_cast<int>(monos.size());
  auto var = [&](int mu, const PolyD::Mono& m) { return mu * nm + monoIdx.at(m); };

  std::vector<SparseRow> rows;
  for (const auto& g : monos) {
    int deg = 0;
    for (int e : g) deg += e;
    if (deg > maxDeg - 1) continue;
    auto bump = [&](int mu) {
      PolyD::Mono m(g);
      ++m[static_cast<size_t>(mu)];
      return m;
    };
    for (int mu = 1; mu < d; ++mu) {
      SparseRow r;
      r[var(0, bump(0))] += Rational(g[0] + 1);
      r[var(mu, bump(mu))] -= Rational(g[static_cast<size_t>(mu)] + 1);
      rows.push_back(std::move(r));
    }
    for (int mu = 0; mu < d; ++mu)
      for (int nu = mu + 1; nu < d; ++nu) {
        SparseRow r;
        r[var(nu, bump(mu))] += Rational(g[static_cast<size_t>(mu)] + 1);
        r[var(mu, bump(nu))] += Rational(g[static_cast<size_t>(nu)] + 1);
        rows.push_back(std::move(r));
      }
  }
  auto pivots = rref(rows);

  Nullspace ns;
  const int nvarsTotal = d * nm;
  for (int f = 0; f < nvarsTotal; ++f) {
    if (pivots.count(f)) continue;
    std::vector<Rational> sol(static_cast<size_t>(nvarsTotal), Rational(0));
    sol[static_cast<size_t>(f)] = Rational(1);
    for (const auto& [pcol, ri] : pivots) {
      auto it = rows[ri].find(f);
      if (it != rows[ri].end()) sol[static_cast<size_t>(pcol)] = -it->second;
    }
    std::vector<PolyD> field;
    for (int mu = 0; mu < d; ++mu) {
      PolyD comp(d);
      for (int i = 0; i < nm; ++i)
        comp.addTerm(monos[static_cast<size_t>(i)], sol[static_cast<size_t>(mu * nm + i)]);
      field.push_back(comp);
      ns.maxBasisDegree = std::max(ns.maxBasisDegree, comp.totalDegree());
    }
    ns.basis.push_back(std::move(field));
  }
  ns.dim = static_cast<int>(ns.basis.size());
  return ns;
}

PolyD buildF2d(const H0Family& fam, const PolyD& V) {
  const int d = fam.d;
  if (V.nvars() != d) throw std::invalid_argument("buildF2d: V arity mismatch");
  std::vector<PolyD> h = buildH0(fam);
  const int n = d + 1;
  PolyD E = PolyD::variable(n, d);
  PolyD Vw = V.widened(n);
  PolyD affine = PolyD::constant(n, fam.k);
  for (int mu = 0; mu < d; ++mu)
    affine += fam.l[static_cast<size_t>(mu)] * PolyD::variable(n, mu);
  PolyD F = Rational(4) * ((E - Vw) * affine);
  for (int mu = 0; mu < d; ++mu)
    F -= Rational(2) * (h[static_cast<size_t>(mu)].widened(n) * V.derivative(mu).widened(n));
  return F;
}

PolyD buildF2dGeneral(const std::vector<PolyD>& h, const PolyD& V) {
  const int d = V.nvars();
  if (static_cast<int>(h.size()) != d) throw std::invalid_argument("buildF2dGeneral: h size");
  for (const auto& comp : h)
    if (comp.nvars() != d) throw std::invalid_argument("buildF2dGeneral: h arity mismatch");
  PolyD divh(d);
  for (int mu = 0; mu < d; ++mu) divh += h[static_cast<size_t>(mu)].derivative(mu);
  PolyD lap(d);
  for (int mu = 0; mu < d; ++mu) lap += divh.derivative(mu).derivative(mu);
  const int n = d + 1;
  PolyD E = PolyD::variable(n, d);
  PolyD v = Rational(2) * V.widened(n) - Rational(2) * E;
  PolyD F = Rational(2 - d, 2 * d) * lap.widened(n);
  F -= Rational(2, d) * (v * divh.widened(n));
  for (int mu = 0; mu < d; ++mu)
    F -= h[static_cast<size_t>(mu)].widened(n) * (Rational(2) * V.derivative(mu).widened(n));
  return F;
}

std::vector<PolyD> lambdaGradientF2d(const PolyD& V) {
  const int d = V.nvars();
  auto blank = [d] {
    H0Family f;
    f.d = d;
    f.h0AtZero.assign(static_cast<size_t>(d), Rational(0));
    f.A.assign(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d), Rational(0)));
    f.l.assign(static_cast<size_t>(d), Rational(0));
    return f;
  };
  std::vector<PolyD> out;
  for (int mu = 0; mu < d; ++mu) {
    H0Family f = blank();
    f.h0AtZero[static_cast<size_t>(mu)] = Rational(1);
    out.push_back(buildF2d(f, V));
  }
  {
    H0Family f = blank();
    f.k = Rational(1);
    out.push_back(buildF2d(f, V));
  }
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu + 1; nu < d; ++nu) {
      H0Family f = blank();
      f.A[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = Rational(1);
      f.A[static_cast<size_t>(nu)][static_cast<size_t>(mu)] = Rational(-1);
      out.push_back(buildF2d(f, V));
    }
  for (int mu = 0; mu < d; ++mu) {
    H0Family f = blank();
    f.l[static_cast<size_t>(mu)] = Rational(1);
    out.push_back(buildF2d(f, V));
  }
  return out;
}

std::vector<CriticalPoint> criticalReduction(const PolyD& V,
                                             const std::vector<std::vector<double>>& guesses) {
  const int d = V.nvars();
  std::vector<PolyD> grads = lambdaGradientF2d(V);
  const int m = static_cast<int>(grads.size());
  const int n = d + 1;
  std::vector<std::vector<PolyD>> jac;
  for (const auto& g : grads) {
    std::vector<PolyD> row;
    for (int c = 0; c < n; ++c) row.push_back(g.derivative(c));
    jac.push_back(std::move(row));
  }
  std::vector<PolyD> gradV;
  for (int mu = 0; mu < d; ++mu) gradV.push_back(V.derivative(mu));

  std::vector<CriticalPoint> out;
  for (const auto& guess : guesses) {
    if (static_cast<int>(guess.size()) != d)
      throw std::invalid_argument("criticalReduction: guess dimension mismatch");
    std::vector<double> u(guess);
    u.push_back(V.eval(guess));
    auto resNorm = [&](const std::vector<double>& pt) {
      double rn = 0;
      for (const auto& g : grads) rn = std::max(rn, std::fabs(g.eval(pt)));
      return rn;
    };
    double rn = resNorm(u);
    for (int it = 0; it < 120 && rn > 1e-13; ++it) {
      Eigen::MatrixXd J(m, n);
      Eigen::VectorXd r(m);
      for (int k = 0; k < m; ++k) {
        r(k) = grads[static_cast<size_t>(k)].eval(u);
        for (int c = 0; c < n; ++c)
          J(k, c) = jac[static_cast<size_t>(k)][static_cast<size_t>(c)].eval(u);
      }
      Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
      double t = 1.0;
      bool accepted = false;
      while (t >= 1e-12) {
        std::vector<double> u2(u);
        for (int c = 0; c < n; ++c) u2[static_cast<size_t>(c)] += t * step(c);
        double rn2 = resNorm(u2);
        if (rn2 < rn) {
          u = std::move(u2);
          rn = rn2;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) break;
    }
    CriticalPoint cp;
    cp.x.assign(u.begin(), u.end() - 1);
    cp.E = u.back();
    cp.residual = rn;
    cp.converged = rn <= 1e-10;
    double g2 = 0;
    for (const auto& g : gradV) {
      double gv = g.eval(cp.x);
      g2 += gv * gv;
    }
    cp.gradNorm = std::sqrt(g2);
    cp.eMinusV = cp.E - V.eval(cp.x);
    out.push_back(std::move(cp));
  }
  return out;
}

PolyD isotropicQuadratic(int d) {
  PolyD V(d);
  for (int mu = 0; mu < d; ++mu) {
    PolyD x = PolyD::variable(d, mu);
    V += Rational(1, 2) * (x * x);
  }
  return V;
}

PolyD productQuartic(int d) {
  PolyD V(d);
  PolyD one = PolyD::constant(d, Rational(1));
  for (int mu = 0; mu < d; ++mu) {
    PolyD x = PolyD::variable(d, mu);
    PolyD s = x * x - one;
    V += s * s;
  }
  return V;
}

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]
constexpr double kGLx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGLw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

double gauss16(const std::function<double(double)>& f, double a, double b) {
  double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double acc = 0;
  for (int i = 0; i < 8; ++i)
    acc += kGLw[i] * (f(c - hw * kGLx[i]) + f(c + hw * kGLx[i]));
  return acc * hw;
}

double adaptiveSimpson(const std::function<double(double)>& f, double a, double m, double b,
                       double fa, double fm, double fb, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptiveSimpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptiveSimpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return adaptiveSimpson(f, a, m, b, fa, fm, fb, whole, tol, 24);
}

}  // namespace

double nullResult2d(const PolyD& V, const std::vector<PolyD>& h, double E) {
  if (V.nvars() != 2 || h.size() != 2 || h[0].nvars() != 2 || h[1].nvars() != 2)
    throw std::invalid_argument("nullResult2d: expects a planar potential and field");
  if (!checkConstraints(h))
    throw std::invalid_argument("nullResult2d: field violates the divergence constraints");
  PolyD F = buildF2dGeneral(h, V);

  double R = 1.0;
  auto boundaryInside = [&](double r) {
    const int K = 256;
    for (int i = 0; i <= K; ++i) {
      double t = -r + 2.0 * r * i / K;
      if (V.eval({t, -r}) <= E || V.eval({t, r}) <= E || V.eval({-r, t}) <= E ||
          V.eval({r, t}) <= E)
        return true;
    }
    return false;
  };
  while (boundaryInside(R)) {
    R *= 2.0;
    if (R > 1024.0)
      throw std::runtime_error("nullResult2d: classically allowed region appears unbounded");
  }

  auto slice = [&](double y) {
    // dense x-coefficients of V(x, y) - E
    int degX = std::max(V.degreeIn(0), 0);
    std::vector<double> cx(static_cast<size_t>(degX) + 1, 0.0);
    for (const auto& [m, c] : V.terms()) {
      double t = c.toDouble();
      for (int e = 0; e < m[1]; ++e) t *= y;
      cx[static_cast<size_t>(m[0])] += t;
    }
    cx[0] -= E;
    auto p = [&](double x) {
      double acc = 0;
      for (int i = degX; i >= 0; --i) acc = acc * x + cx[static_cast<size_t>(i)];
      return acc;
    };
    std::vector<double> cuts{-R};
    const int K = 512;
    double prev = p(-R);
    for (int i = 1; i <= K; ++i) {
      double x = -R + 2.0 * R * i / K;
      double cur = p(x);
      if ((prev < 0) != (cur < 0)) {
        double a = x - 2.0 * R / K, b = x, fa = prev;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (a + b), fmid = p(mid);
          if ((fmid < 0) == (fa < 0)) {
            a = mid;
            fa = fmid;
          } else {
            b = mid;
          }
        }
        cuts.push_back(0.5 * (a + b));
      }
      prev = cur;
    }
    cuts.push_back(R);
    double acc = 0;
    auto integrand = [&](double x) { return F.eval({x, y, E}); };
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      double a = cuts[i], b = cuts[i + 1];
      if (b - a <= 0) continue;
      if (p(0.5 * (a + b)) <= 0) acc += gauss16(integrand, a, b);
    }
    return acc;
  };

  return integrate(slice, -R, R, 1e-9);
}

}  // namespace specgap
