#include "specgap/gapcert.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace specgap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt * 0x9E3779B97F4A7C15ull + 0xBF58476D1CE4E5B9ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<Poly1> sturmChain(const Poly1& p) {
  std::vector<Poly1> chain;
  chain.push_back(p);
  Poly1 d = p.derivative();
  if (!d.isZero()) chain.push_back(d);
  while (chain.back().degree() > 0) {
    Poly1 rem = chain[chain.size() - 2].divmod(chain.back()).second;
    if (rem.isZero()) break;
    chain.push_back(-rem);
  }
  return chain;
}

int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int variationsAt(const std::vector<Poly1>& chain, const Rational& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) s.push_back(q.eval(x).sign());
  return variations(s);
}

int variationsAtInf(const std::vector<Poly1>& chain, int dir) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) {
    if (q.isZero()) {
      s.push_back(0);
      continue;
    }
    int lead = q.leading().sign();
    s.push_back(dir > 0 ? lead : (q.degree() % 2 == 0 ? lead : -lead));
  }
  return variations(s);
}

/// Strict bound on root magnitude: 1 + max |c_i / c_n|.
Rational cauchyBound(const Poly1& p) {
  Rational b(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational q = (p.coeff(i) / p.leading()).abs();
    if (b < q) b = q;
  }
  return b + Rational(1);
}

}  // namespace

std::string verdictStr(SignVerdict v) {
  switch (v) {
    case SignVerdict::PositiveDefinite: return "PositiveDefinite";
    case SignVerdict::NegativeDefinite: return "NegativeDefinite";
    case SignVerdict::Indefinite: return "Indefinite";
    case SignVerdict::IdenticallyZero: return "IdenticallyZero";
  }
  return "?";
}

int countRealRoots(const Poly1& p) {
  if (p.degree() <= 0) return 0;
  auto chain = sturmChain(p);
  return variationsAtInf(chain, -1) - variationsAtInf(chain, +1);
}

int countRealRootsBetween(const Poly1& p, const Rational& lo, const Rational& hi) {
  if (p.degree() <= 0) return 0;
  auto chain = sturmChain(p);
  return variationsAt(chain, lo) - variationsAt(chain, hi);
}

SignVerdict sturmSign(const Poly1& p) {
  if (p.isZero()) return SignVerdict::IdenticallyZero;
  if (p.degree() == 0) return p.leading().sign() > 0 ? SignVerdict::PositiveDefinite
                                                     : SignVerdict::NegativeDefinite;
  if (p.degree() % 2 == 1) return SignVerdict::Indefinite;
  if (countRealRoots(p) > 0) return SignVerdict::Indefinite;
  return p.leading().sign() > 0 ? SignVerdict::PositiveDefinite : SignVerdict::NegativeDefinite;
}

std::vector<double> isolateRealRoots(const Poly1& p, double widthTol) {
  std::vector<double> out;
  if (p.degree() <= 0) return out;
  auto chain = sturmChain(p);
  auto count = [&chain](const Rational& lo, const Rational& hi) {
    return variationsAt(chain, lo) - variationsAt(chain, hi);
  };
  Rational B = cauchyBound(p);
  Rational tol = Rational::fromDouble(std::max(widthTol, 1e-15)) * (B < Rational(1) ? Rational(1) : B);

  struct Seg {
    Rational lo, hi;
    int roots;
  };
  std::vector<Seg> stack{{-B, B, count(-B, B)}};
  Poly1 dp = p.derivative();
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (s.roots == 0) continue;
    if (s.hi - s.lo <= tol) {
      Rational mid = (s.lo + s.hi) / Rational(2);
      double r = mid.toDouble();
      // Newton polish, guarded to stay in the bracket
      for (int i = 0; i < 6; ++i) {
        double f = p.eval(r), g = dp.eval(r);
        if (g == 0.0) break;
        double r2 = r - f / g;
        if (!(r2 >= s.lo.toDouble() && r2 <= s.hi.toDouble())) break;
        r = r2;
      }
      out.push_back(r);
      continue;
    }
    Rational mid = (s.lo + s.hi) / Rational(2);
    if (p.eval(mid).isZero()) {
      // exact root at the midpoint: emit it and excise a neighborhood
      out.push_back(mid.toDouble());
      Rational eps = (s.hi - s.lo) / Rational(1024);
      while (count(mid - eps, mid + eps) != 1 || p.eval(mid - eps).isZero() ||
             p.eval(mid + eps).isZero())
        eps /= Rational(2);
      stack.push_back({s.lo, mid - eps, count(s.lo, mid - eps)});
      stack.push_back({mid + eps, s.hi, count(mid + eps, s.hi)});
      continue;
    }
    int left = count(s.lo, mid);
    stack.push_back({s.lo, mid, left});
    stack.push_back({mid, s.hi, s.roots - left});
  }
  std::sort(out.begin(), out.end());
  return out;
}

double marginPoly(const Poly1& p) {
  if (p.isZero()) return 0.0;
  if (p.degree() == 0) return p.leading().toDouble();
  if (p.degree() % 2 == 1 || p.leading().sign() <= 0) return -kInf;
  double m = kInf;
  for (double r : isolateRealRoots(p.derivative())) m = std::min(m, p.eval(r));
  return m;
}

double margin(const ParamPoly& F, double E, const std::vector<double>& lambda) {
  std::vector<Rational> lamR;
  lamR.reserve(lambda.size());
  for (double v : lambda) lamR.push_back(Rational::fromDouble(v));
  return marginPoly(F.evalELExact(Rational::fromDouble(E), lamR));
}

namespace {

/// Sampled definiteness score of the x-polynomial with coefficients c:
/// best over both signs of the minimum over a root-bounded sample grid.
/// Large negative sentinels for shapes that can never be definite.
double sampledMargin(const std::vector<double>& c) {
  double amax = 0;
  for (double v : c) amax = std::max(amax, std::fabs(v));
  if (amax == 0.0) return -1e300;
  int deg = -1;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    if (std::fabs(c[static_cast<size_t>(i)]) > amax * 1e-13) {
      deg = i;
      break;
    }
  if (deg < 0) return -1e300;
  if (deg == 0) return std::fabs(c[0]);
  if (deg % 2 == 1) return -1e290;
  double top = c[static_cast<size_t>(deg)];
  double s = top > 0 ? 1.0 : -1.0;
  double B = 1.0;
  for (int i = 0; i < deg; ++i)
    B = std::max(B, 2.0 * std::pow(std::fabs(c[static_cast<size_t>(i)] / top), 1.0 / (deg - i)));
  B = std::min(B, 64.0);
  double best = kInf;
  const int K = 320;
  for (int k = 0; k <= K; ++k) {
    double x = -B + 2.0 * B * k / K;
    double acc = 0;
    for (int i = deg; i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
    best = std::min(best, s * acc);
  }
  return best;
}

std::optional<LambdaWitness> validateExact(const ParamPoly& F, double E,
                                           const std::vector<double>& lam) {
  std::vector<Rational> lamR;
  lamR.reserve(lam.size());
  for (double v : lam) lamR.push_back(Rational::fromDouble(v));
  Poly1 q = F.evalELExact(Rational::fromDouble(E), lamR);
  SignVerdict v = sturmSign(q);
  if (v == SignVerdict::PositiveDefinite) return LambdaWitness{lam, marginPoly(q), v};
  if (v == SignVerdict::NegativeDefinite) return LambdaWitness{lam, marginPoly(-q), v};
  return std::nullopt;
}

}  // namespace

std::optional<LambdaWitness> findLambda(const ParamPoly& F, double E, const LambdaBox& box,
                                        int budget, uint64_t seed) {
  if (box.isEmpty()) return std::nullopt;
  const int p = F.arity();
  if (p == 0) return validateExact(F, E, {});

  int evalsLeft = std::max(budget, 50);
  auto objective = [&](const std::vector<double>& lam) {
    --evalsLeft;
    for (double v : lam)
      if (v < box.lo || v > box.hi) return -1e280 * (1.0 + std::fabs(v));
    return sampledMargin(F.evalEL(E, lam));
  };

  // deterministic coarse grid
  int r = std::max(3, static_cast<int>(std::floor(std::pow(evalsLeft / 3.0, 1.0 / p))));
  r = std::min(r, p == 1 ? 65 : 9);
  std::vector<std::pair<double, std::vector<double>>> scored;
  std::vector<int> idx(static_cast<size_t>(p), 0);
  for (;;) {
    std::vector<double> lam(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i)
      lam[static_cast<size_t>(i)] = box.lo + (box.hi - box.lo) * idx[static_cast<size_t>(i)] / (r - 1);
    scored.emplace_back(objective(lam), lam);
    int i = 0;
    while (i < p && ++idx[static_cast<size_t>(i)] == r) idx[static_cast<size_t>(i++)] = 0;
    if (i == p) break;
  }
  std::mt19937_64 rng(mixSeed(seed, 0xA5A5));
  std::uniform_real_distribution<double> uni(box.lo, box.hi);
  for (int t = 0; t < 4; ++t) {
    std::vector<double> lam(static_cast<size_t>(p));
    for (auto& v : lam) v = uni(rng);
    scored.emplace_back(objective(lam), lam);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  // Nelder-Mead from the best starts
  auto nelderMead = [&](std::vector<double> start) {
    const size_t n = static_cast<size_t>(p);
    std::vector<std::pair<double, std::vector<double>>> sx;
    sx.emplace_back(objective(start), start);
    double h = 0.2 * (box.hi - box.lo);
    for (size_t i = 0; i < n; ++i) {
      auto v = start;
      v[i] = std::min(v[i] + h, box.hi);
      if (v[i] == start[i]) v[i] = std::max(start[i] - h, box.lo);
      sx.emplace_back(objective(v), v);
    }
    auto order = [&] {
      std::stable_sort(sx.begin(), sx.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
    };
    order();
    while (evalsLeft > 0) {
      std::vector<double> centroid(n, 0.0);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) centroid[j] += sx[i].second[j] / static_cast<double>(n);
      auto blend = [&](double t) {
        std::vector<double> v(n);
        for (size_t j = 0; j < n; ++j)
          v[j] = centroid[j] + t * (centroid[j] - sx[n].second[j]);
        return v;
      };
      auto refl = blend(1.0);
      double fr = objective(refl);
      if (fr > sx[0].first) {
        auto exp2 = blend(2.0);
        double fe = objective(exp2);
        if (fe > fr)
          sx[n] = {fe, exp2};
        else
          sx[n] = {fr, refl};
      } else if (fr > sx[n - 1].first) {
        sx[n] = {fr, refl};
      } else {
        auto con = blend(-0.5);
        double fc = objective(con);
        if (fc > sx[n].first) {
          sx[n] = {fc, con};
        } else {
          for (size_t i = 1; i <= n; ++i) {
            for (size_t j = 0; j < n; ++j)
              sx[i].second[j] = 0.5 * (sx[i].second[j] + sx[0].second[j]);
            sx[i].first = objective(sx[i].second);
          }
        }
      }
      order();
      double spread = 0;
      for (size_t j = 0; j < n; ++j)
        spread = std::max(spread, std::fabs(sx[0].second[j] - sx[n].second[j]));
      if (spread < 1e-10) break;
    }
    return sx[0];
  };

  size_t starts = std::min<size_t>(3, scored.size());
  std::vector<std::pair<double, std::vector<double>>> finals;
  for (size_t i = 0; i < starts && evalsLeft > 0; ++i) {
    if (scored[i].first <= -1e280) continue;
    finals.push_back(nelderMead(scored[i].second));
  }
  std::stable_sort(finals.begin(), finals.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [score, lam] : finals) {
    if (score <= 0) continue;
    if (auto w = validateExact(F, E, lam)) return w;
  }
  // last resort: exact-validate the best raw grid point
  if (!scored.empty() && scored[0].first > 0) return validateExact(F, E, scored[0].second);
  return std::nullopt;
}

namespace {

struct RefineResult {
  double bound;
};

}  // namespace

std::vector<GapInterval> scanGaps(const ParamPoly& F, const ScanConfig& cfg) {
  std::vector<GapInterval> out;
  if (!(cfg.eLo <= cfg.eHi) || !(cfg.eStep > 0)) return out;
  const int n = static_cast<int>(std::floor((cfg.eHi - cfg.eLo) / cfg.eStep + 1e-12)) + 1;
  std::vector<double> Es(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) Es[static_cast<size_t>(i)] = cfg.eLo + i * cfg.eStep;

  std::vector<std::optional<LambdaWitness>> wit(static_cast<size_t>(n));
  int T = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  T = std::max(1, std::min(T, n));
  {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t)
      pool.emplace_back([&, t] {
        for (int i = t; i < n; i += T)
          wit[static_cast<size_t>(i)] =
              findLambda(F, Es[static_cast<size_t>(i)], cfg.box, cfg.budget,
                         mixSeed(cfg.seed, static_cast<std::uint64_t>(i)));
      });
    for (auto& th : pool) th.join();
  }

  std::uint64_t refineSalt = 1u << 20;
  auto certifiedAt = [&](double E) {
    return findLambda(F, E, cfg.box, cfg.budget, mixSeed(cfg.seed, refineSalt++));
  };
  // bisect between a certified and an uncertified energy, returning the
  // certified-side bound (conservative)
  auto refine = [&](double certified, double uncertified) {
    double c = certified, u = uncertified;
    while (std::fabs(c - u) > cfg.tol) {
      double mid = 0.5 * (c + u);
      if (certifiedAt(mid))
        c = mid;
      else
        u = mid;
    }
    return c;
  };

  for (int i = 0; i < n;) {
    if (!wit[static_cast<size_t>(i)]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && wit[static_cast<size_t>(j) + 1]) ++j;

    GapInterval g;
    g.eLow = i > 0 ? refine(Es[static_cast<size_t>(i)], Es[static_cast<size_t>(i) - 1])
                   : Es[static_cast<size_t>(i)];
    g.eHigh = j + 1 < n ? refine(Es[static_cast<size_t>(j)], Es[static_cast<size_t>(j) + 1])
                        : Es[static_cast<size_t>(j)];
    if (i == 0 && cfg.tailCheck) {
      TailCertificate tc =
          certifyBelow(F, Es[0], cfg.box, cfg.budget, mixSeed(cfg.seed, 0x7A11u));
      if (tc.certified) g.unboundedBelow = true;
    }

    auto push = [&g](double E, const LambdaWitness& w) {
      g.witnesses.push_back({E, w.lambda, w.margin});
    };
    std::vector<int> picks{i, (i + j) / 2, j};
    picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
    for (int k : picks) push(Es[static_cast<size_t>(k)], *wit[static_cast<size_t>(k)]);
    int extra = 0;
    while (static_cast<int>(g.witnesses.size()) < cfg.minWitnesses && extra < 8) {
      double E = g.eLow + (g.eHigh - g.eLow) * (extra + 1) / 9.0;
      ++extra;
      if (auto w = certifiedAt(E)) push(E, *w);
    }
    if (static_cast<int>(g.witnesses.size()) >= std::min(cfg.minWitnesses, 1) &&
        g.eLow <= g.eHigh)
      out.push_back(std::move(g));
    i = j + 1;
  }
  return out;
}

TailCertificate certifyBelow(const ParamPoly& F, double E0, const LambdaBox& box, int budget,
                             uint64_t seed) {
  TailCertificate tc;
  tc.eBound = E0;
  if (F.maxDegE() > 1) {
    tc.reason = "gap function is not affine in E";
    return tc;
  }
  auto w = findLambda(F, E0, box, budget, seed);
  if (!w) {
    tc.reason = "no definite witness at the boundary energy";
    return tc;
  }
  std::vector<Rational> lamR;
  for (double v : w->lambda) lamR.push_back(Rational::fromDouble(v));
  Poly1 slope = F.dE().evalELExact(Rational(0), lamR);
  Poly1 oriented = w->verdict == SignVerdict::PositiveDefinite ? -slope : slope;
  SignVerdict sv = sturmSign(oriented);
  if (sv == SignVerdict::PositiveDefinite || sv == SignVerdict::IdenticallyZero) {
    tc.certified = true;
    tc.lambda = w->lambda;
  } else {
    tc.reason = "dF/dE keeps the wrong sign somewhere";
  }
  return tc;
}

BifurcationPoint bifurcationSolve(const ParamPoly& F, double x0, double E0,
                                  const std::vector<double>& lambda0, int maxIter) {
  const int p = F.arity();
  BifurcationPoint bp;
  bp.lambda.assign(static_cast<size_t>(p), 0.0);
  if (static_cast<int>(lambda0.size()) != p)
    throw std::invalid_argument("bifurcationSolve: lambda guess arity mismatch");

  std::vector<ParamPoly> eqs{F, F.dx()};
  for (int i = 0; i < p; ++i) eqs.push_back(F.dLambda(i));
  bool normed = p >= 1 && F.isLinearHomogeneousInLambda();
  if (normed) {
    ParamPoly norm = ParamPoly::constant(p, Rational(-1));
    for (int i = 0; i < p; ++i) norm += ParamPoly::lambda(p, i) * ParamPoly::lambda(p, i);
    eqs.push_back(norm);
  }
  const int m = static_cast<int>(eqs.size());
  const int nu = 2 + p;
  std::vector<std::vector<ParamPoly>> jac(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    jac[static_cast<size_t>(k)].push_back(eqs[static_cast<size_t>(k)].dx());
    jac[static_cast<size_t>(k)].push_back(eqs[static_cast<size_t>(k)].dE());
    for (int i = 0; i < p; ++i)
      jac[static_cast<size_t>(k)].push_back(eqs[static_cast<size_t>(k)].dLambda(i));
  }

  std::vector<double> u{x0, E0};
  u.insert(u.end(), lambda0.begin(), lambda0.end());
  auto evalEq = [&](const ParamPoly& q, const std::vector<double>& v) {
    std::vector<double> lam(v.begin() + 2, v.end());
    return q.evalAll(v[0], v[1], lam);
  };
  auto resNorm = [&](const std::vector<double>& v) {
    double rn = 0;
    for (const auto& q : eqs) rn = std::max(rn, std::fabs(evalEq(q, v)));
    return rn;
  };

  double rn = resNorm(u);
  int it = 0;
  for (; it < maxIter && rn > 1e-12; ++it) {
    Eigen::MatrixXd J(m, nu);
    Eigen::VectorXd r(m);
    for (int k = 0; k < m; ++k) {
      r(k) = evalEq(eqs[static_cast<size_t>(k)], u);
      for (int c = 0; c < nu; ++c)
        J(k, c) = evalEq(jac[static_cast<size_t>(k)][static_cast<size_t>(c)], u);
    }
    Eigen::VectorXd step = J.colPivHouseholderQr().solve(-r);
    double t = 1.0;
    bool accepted = false;
    while (t >= 1e-12) {
      std::vector<double> u2 = u;
      for (int c = 0; c < nu; ++c) u2[static_cast<size_t>(c)] += t * step(c);
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

  bp.x = u[0];
  bp.E = u[1];
  for (int i = 0; i < p; ++i) bp.lambda[static_cast<size_t>(i)] = u[static_cast<size_t>(i) + 2];
  bp.residual = rn;
  bp.iterations = it;
  bp.converged = rn <= 1e-10;
  {
    std::vector<double> lam(u.begin() + 2, u.end());
    bp.dEF = F.dE().evalAll(u[0], u[1], lam);
    bp.dxxF = F.dx(2).evalAll(u[0], u[1], lam);
  }
  bp.nondegenerate = std::fabs(bp.dEF) * std::fabs(bp.dxxF) > 1e-8;
  if (p > 0) {
    int m0 = 2 + p;  // rows F, Fx, Flambda (no normalization row)
    Eigen::MatrixXd J0(m0, nu);
    for (int k = 0; k < m0; ++k)
      for (int c = 0; c < nu; ++c)
        J0(k, c) = evalEq(jac[static_cast<size_t>(k)][static_cast<size_t>(c)], u);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(J0);
    qr.setThreshold(1e-7);
    bp.degenerateLambda = qr.rank() < nu;
  }
  return bp;
}

}  // namespace specgap
