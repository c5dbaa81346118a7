#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "specgap/gapcert.hpp"
#include "specgap/ladder.hpp"
#include "specgap/parampoly.hpp"
#include "specgap/polyparse.hpp"

using namespace specgap;

namespace {

Poly1 p1(std::vector<long> coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return Poly1(std::move(c));
}

ParamPoly gapFunction(const std::string& potential, const std::string& family, int N) {
  ParamPoly fam = parseFamily(family);
  std::map<int, ParamPoly> assign{{0, fam}};
  return substitute(computeF(N), parsePotential(potential), assign, fam.arity());
}

}  // namespace

TEST_CASE("distinct real root counting") {
  CHECK(countRealRoots(p1({-2, 1}) * p1({-2, 1})) == 1);         // (x-2)^2
  CHECK(countRealRoots(p1({-1, 0, 1})) == 2);                    // x^2-1
  CHECK(countRealRoots(p1({1, 0, 1})) == 0);                     // x^2+1
  CHECK(countRealRoots(p1({0, -1, 0, 1})) == 3);                 // x^3-x
  CHECK(countRealRoots(p1({-1, 1}) * p1({-1, 1}) * p1({2, 1})) == 2);
  CHECK(countRealRoots(p1({7})) == 0);
  CHECK(countRealRoots(Poly1()) == 0);
}

TEST_CASE("root counting on a half-open interval") {
  Poly1 p = p1({-1, 0, 1});  // roots at -1 and 1
  CHECK(countRealRootsBetween(p, Rational(-1), Rational(1)) == 1);  // (-1, 1] keeps +1 only
  CHECK(countRealRootsBetween(p, Rational(-2), Rational(-1)) == 1);
  CHECK(countRealRootsBetween(p, Rational(-2), Rational(2)) == 2);
  CHECK(countRealRootsBetween(p, Rational(0), Rational(1, 2)) == 0);
}

TEST_CASE("sign classification over the whole line") {
  CHECK(sturmSign(p1({1, 0, 0, 0, 1})) == SignVerdict::PositiveDefinite);   // x^4+1
  CHECK(sturmSign(p1({-1, 0, -1})) == SignVerdict::NegativeDefinite);       // -x^2-1
  CHECK(sturmSign(p1({0, 0, 1})) == SignVerdict::Indefinite);               // x^2 touches zero
  CHECK(sturmSign(p1({-1, 0, 1})) == SignVerdict::Indefinite);
  CHECK(sturmSign(p1({0, 1})) == SignVerdict::Indefinite);                  // odd degree
  CHECK(sturmSign(Poly1()) == SignVerdict::IdenticallyZero);
  CHECK(sturmSign(p1({5})) == SignVerdict::PositiveDefinite);
  CHECK(sturmSign(p1({-3})) == SignVerdict::NegativeDefinite);
  CHECK(verdictStr(SignVerdict::PositiveDefinite) == "PositiveDefinite");
}

TEST_CASE("sign verdicts agree with dense sampling on random polynomials") {
  std::mt19937 rng(20260814u);
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> deg(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> c(static_cast<size_t>(deg(rng)) + 1);
    for (auto& ci : c) ci = Rational(coeff(rng));
    Poly1 p(std::move(c));
    SignVerdict v = sturmSign(p);
    bool sawPos = false, sawNeg = false, sawZero = false;
    for (int i = -400; i <= 400; ++i) {
      Rational val = p.eval(Rational(i, 40));
      sawPos |= val.sign() > 0;
      sawNeg |= val.sign() < 0;
      sawZero |= val.isZero();
    }
    CAPTURE(trial);
    CAPTURE(p.str());
    if (v == SignVerdict::PositiveDefinite) CHECK((sawPos && !sawNeg && !sawZero));
    if (v == SignVerdict::NegativeDefinite) CHECK((sawNeg && !sawPos && !sawZero));
    if (v == SignVerdict::IdenticallyZero) CHECK((!sawPos && !sawNeg));
    // A definite verdict is impossible when sampling finds both signs.
    if (sawPos && sawNeg) CHECK(v == SignVerdict::Indefinite);

    // Squares plus one are always positive-definite.
    Poly1 sq = p * p + p1({1});
    CHECK(sturmSign(sq) == SignVerdict::PositiveDefinite);
  }
}

TEST_CASE("root isolation recovers known irrational roots") {
  Poly1 p = p1({6, 0, -5, 0, 1});  // (x^2-2)(x^2-3)
  auto roots = isolateRealRoots(p);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-10));
  CHECK(roots[1] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-10));
  CHECK(roots[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(roots[3] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("root isolation handles roots at bisection midpoints and multiplicity") {
  auto roots = isolateRealRoots(p1({0, -1, 0, 1}));  // x^3 - x, root at the exact midpoint 0
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(roots[1]) < 1e-10);
  CHECK(roots[2] == doctest::Approx(1.0).epsilon(1e-10));

  auto dbl = isolateRealRoots(p1({-1, 1}) * p1({-1, 1}));  // (x-1)^2
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("polynomial margin over the real line") {
  CHECK(marginPoly(p1({1, 0, 0, 0, 1})) == doctest::Approx(1.0));   // x^4+1
  CHECK(marginPoly(p1({4, 0, 4})) == doctest::Approx(4.0));         // 4x^2+4
  CHECK(marginPoly(p1({-1, 0, 1})) == doctest::Approx(-1.0));       // dips below zero
  CHECK(marginPoly(p1({7})) == doctest::Approx(7.0));
  CHECK(marginPoly(Poly1()) == doctest::Approx(0.0));
  CHECK(marginPoly(p1({0, 0, 0, 1})) == -std::numeric_limits<double>::infinity());
  CHECK(marginPoly(p1({-1, 0, -1})) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("margin of the harmonic witness scales linearly in lambda") {
  ParamPoly F = gapFunction("1/2*x^2", "l1*x", 2);  // l1 * (4E - 4x^2)
  double m1 = margin(F, -1.0, {-1.0});              // 4x^2 + 4
  CHECK(m1 == doctest::Approx(4.0));
  CHECK(margin(F, -1.0, {-2.0}) == doctest::Approx(2.0 * m1));
  CHECK(margin(F, -2.5, {-1.0}) == doctest::Approx(10.0));
  // The positively oriented member dips to -inf: leading coefficient < 0.
  CHECK(margin(F, -1.0, {1.0}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("lambda search certifies below the harmonic ground state and not above") {
  ParamPoly F = gapFunction("1/2*x^2", "l1*x", 2);
  LambdaBox box{-2.0, 2.0};

  auto below = findLambda(F, -1.0, box, 600, 7);
  REQUIRE(below.has_value());
  CHECK(below->margin > 0.0);
  CHECK((below->verdict == SignVerdict::PositiveDefinite ||
         below->verdict == SignVerdict::NegativeDefinite));

  // Above the ground state 1/2 every member changes sign: no witness exists.
  CHECK_FALSE(findLambda(F, 1.0, box, 600, 7).has_value());

  LambdaBox empty{1.0, -1.0};
  CHECK_FALSE(findLambda(F, -1.0, empty, 600, 7).has_value());
}

TEST_CASE("lambda search is deterministic for a fixed seed") {
  ParamPoly F = gapFunction("x^4-2*x^2", "l1*x+l2*x^3", 2);
  auto w1 = findLambda(F, -2.0, {-2.0, 2.0}, 600, 42);
  auto w2 = findLambda(F, -2.0, {-2.0, 2.0}, 600, 42);
  REQUIRE(w1.has_value());
  REQUIRE(w2.has_value());
  CHECK(w1->lambda == w2->lambda);
  CHECK(w1->margin == w2->margin);
}

TEST_CASE("gap scan on an empty or degenerate range") {
  ParamPoly F = gapFunction("1/2*x^2", "l1*x", 2);
  ScanConfig cfg;
  cfg.eLo = 1.0;
  cfg.eHi = -1.0;
  CHECK(scanGaps(F, cfg).empty());
  cfg.eLo = cfg.eHi = 10.0;  // single grid point, not certifiable
  cfg.eStep = 0.1;
  CHECK(scanGaps(F, cfg).empty());
}

TEST_CASE("harmonic scan certifies an unbounded-below interval") {
  ParamPoly F = gapFunction("1/2*x^2", "l1*x+l2*x^3", 2);
  ScanConfig cfg;
  cfg.eLo = -2.0;
  cfg.eHi = 0.4;
  cfg.eStep = 0.05;
  cfg.tol = 1e-6;
  cfg.seed = 1;
  auto gaps = scanGaps(F, cfg);
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0].unboundedBelow);
  CHECK(gaps[0].eHigh < 0.5);      // never crosses the ground state
  CHECK(gaps[0].eHigh >= -0.011);  // reaches at least up to the grid start
  REQUIRE(!gaps[0].witnesses.empty());
  for (const auto& w : gaps[0].witnesses) {
    CHECK(w.margin > 0.0);
    CHECK(w.E <= gaps[0].eHigh + 1e-12);
  }
}

TEST_CASE("scan output does not depend on the thread count") {
  ParamPoly F = gapFunction("x^4", "l1*x", 2);
  ScanConfig cfg;
  cfg.eLo = -1.0;
  cfg.eHi = 0.6;
  cfg.eStep = 0.05;
  cfg.seed = 9;
  cfg.threads = 1;
  auto a = scanGaps(F, cfg);
  cfg.threads = 4;
  auto b = scanGaps(F, cfg);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].eLow == b[i].eLow);
    CHECK(a[i].eHigh == b[i].eHigh);
    CHECK(a[i].unboundedBelow == b[i].unboundedBelow);
    REQUIRE(a[i].witnesses.size() == b[i].witnesses.size());
    for (size_t k = 0; k < a[i].witnesses.size(); ++k) {
      CHECK(a[i].witnesses[k].E == b[i].witnesses[k].E);
      CHECK(a[i].witnesses[k].lambda == b[i].witnesses[k].lambda);
    }
  }
}

TEST_CASE("half-line certificate for an affine-in-E member") {
  ParamPoly F = gapFunction("1/2*x^2", "l1*x", 2);
  auto cert = certifyBelow(F, -0.01, {-2.0, 2.0}, 600, 3);
  CHECK(cert.certified);
  CHECK(cert.reason.empty());
  CHECK(cert.eBound == doctest::Approx(-0.01));

  // Above the ground state no definite member exists.
  auto none = certifyBelow(F, 1.0, {-2.0, 2.0}, 600, 3);
  CHECK_FALSE(none.certified);
}

TEST_CASE("half-line certificate refuses quadratic E dependence") {
  ParamPoly F = gapFunction("1/2*x^2", "l1*x", 3);  // N=3 brings E^2 terms
  REQUIRE(F.maxDegE() >= 2);
  auto cert = certifyBelow(F, -1.0, {-2.0, 2.0}, 600, 3);
  CHECK_FALSE(cert.certified);
  CHECK_FALSE(cert.reason.empty());
}

TEST_CASE("boundary solve on a parameter-free toy") {
  // F = x^2 - E loses definiteness exactly at E = 0.
  ParamPoly F = ParamPoly::x(0) * ParamPoly::x(0) - ParamPoly::E(0);
  auto bp = bifurcationSolve(F, 0.4, 0.3, {});
  CHECK(bp.converged);
  CHECK(bp.residual <= 1e-10);
  CHECK(std::abs(bp.x) < 1e-6);
  CHECK(std::abs(bp.E) < 1e-6);
  CHECK(bp.dEF == doctest::Approx(-1.0));
  CHECK(bp.dxxF == doctest::Approx(2.0));
  CHECK(bp.nondegenerate);
}

TEST_CASE("double-well boundary matches the closed form") {
  // F = l1 (4E + 16x^2 - 12x^4): definiteness dies at x^2 = 2/3, E = -4/3.
  ParamPoly F = gapFunction("x^4-2*x^2", "l1*x", 2);
  auto bp = bifurcationSolve(F, 0.8, -1.0, {1.0});
  CHECK(bp.converged);
  CHECK(bp.residual <= 1e-10);
  CHECK(bp.E == doctest::Approx(-4.0 / 3.0).epsilon(1e-9));
  CHECK(std::abs(bp.x) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
  CHECK(bp.nondegenerate);

  // The scan boundary converges to the same energy from below.
  ScanConfig cfg;
  cfg.eLo = -3.0;
  cfg.eHi = -0.5;
  cfg.eStep = 0.05;
  cfg.tol = 1e-6;
  cfg.seed = 2;
  auto gaps = scanGaps(F, cfg);
  REQUIRE(!gaps.empty());
  double boundary = gaps.front().eHigh;
  CHECK(boundary <= bp.E + 1e-9);
  CHECK(boundary >= bp.E - 1e-4);
}

TEST_CASE("pure quartic boundary sits at zero with a flat second derivative") {
  // F = l1 (4E - 12x^4): at the boundary (x, E) = (0, 0) the x-curvature
  // vanishes. Newton stalls on the cubic root near |x| ~ 1e-4, so the
  // reported curvature is tiny but not exactly zero; compare against the
  // O(60) curvature of a genuinely transversal boundary.
  ParamPoly F = gapFunction("x^4", "l1*x", 2);
  auto bp = bifurcationSolve(F, 0.3, -0.2, {1.0});
  CHECK(bp.converged);
  CHECK(std::abs(bp.E) <= 1e-7);
  CHECK(std::abs(bp.dxxF) <= 1e-3);

  ScanConfig cfg;
  cfg.eLo = -1.5;
  cfg.eHi = 0.8;
  cfg.eStep = 0.05;
  cfg.tol = 1e-6;
  cfg.seed = 4;
  auto gaps = scanGaps(F, cfg);
  REQUIRE(!gaps.empty());
  CHECK(std::abs(gaps.front().eHigh - bp.E) <= 1e-5);
}
