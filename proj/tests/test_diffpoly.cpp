#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <stdexcept>
#include <vector>

#include "specgap/diffpoly.hpp"
#include "specgap/ladder.hpp"
#include "specgap/parampoly.hpp"
#include "specgap/poly1.hpp"
#include "specgap/polyparse.hpp"
#include "specgap/rational.hpp"

using namespace specgap;

namespace {

Poly1 p1(std::vector<long> coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return Poly1(std::move(c));
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(7, 2) * Rational(2, 7) == Rational(1));
  CHECK(Rational(1, 3).pow(3) == Rational(1, 27));
  CHECK((-Rational(5, 3)).abs() == Rational(5, 3));
  CHECK(Rational(5, 3).sign() == 1);
  CHECK(Rational(0).isZero());
  CHECK(Rational(4, 2).isInteger());
  CHECK(Rational(1, 2) < Rational(2, 3));
}

TEST_CASE("rational edge cases throw") {
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational::fromDouble(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("fromDouble is the exact dyadic value") {
  CHECK(Rational::fromDouble(0.25) == Rational(1, 4));
  CHECK(Rational::fromDouble(-1.5) == Rational(-3, 2));
  // 0.1 is not exactly representable; the conversion must reproduce the
  // stored double bit pattern, not the decimal literal.
  CHECK(Rational::fromDouble(0.1) != Rational(1, 10));
  CHECK(Rational::fromDouble(0.1).toDouble() == 0.1);
}

TEST_CASE("poly1 division identity") {
  Poly1 a = p1({3, -2, 0, 5, 1});  // 3 - 2x + 5x^3 + x^4
  Poly1 b = p1({-1, 2, 1});        // -1 + 2x + x^2
  auto [q, r] = a.divmod(b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
}

TEST_CASE("poly1 derivative and evaluation") {
  Poly1 p = p1({1, 0, -3, 2});  // 1 - 3x^2 + 2x^3
  CHECK(p.derivative() == p1({0, -6, 6}));
  CHECK(p.eval(Rational(2)) == Rational(1 - 12 + 16));
  CHECK(p.derivative(4).isZero());
  CHECK(Poly1::monomial(Rational(3), 2) == p1({0, 0, 3}));
}

TEST_CASE("diffpoly ring identities") {
  DiffPoly a0 = DiffPoly::symbol(testSym(0));
  DiffPoly v = DiffPoly::symbol(vSym());
  DiffPoly two = DiffPoly::constant(Rational(2));

  CHECK(a0 * v == v * a0);
  CHECK((a0 + v) * two == two * a0 + two * v);
  CHECK((a0 * v) * a0 == a0 * (v * a0));
  CHECK((a0 - a0).isZero());
  CHECK((Rational(0) * v).isZero());
}

TEST_CASE("total derivative obeys the Leibniz rule") {
  DiffPoly a0 = DiffPoly::symbol(testSym(0));
  DiffPoly v = DiffPoly::symbol(vSym());
  DiffPoly prod = a0 * v;
  CHECK(prod.derive() == a0.derive() * v + a0 * v.derive());

  // Second derivative of a^2 = 2 a a'' + 2 (a')^2.
  DiffPoly sq = a0 * a0;
  DiffPoly expect = Rational(2) * (a0 * a0.derive(2)) + Rational(2) * (a0.derive() * a0.derive());
  CHECK(sq.derive(2) == expect);
}

TEST_CASE("derive bumps the derivative order of a bare symbol") {
  DiffPoly vp = DiffPoly::symbol(vSym()).derive(3);
  CHECK(vp == DiffPoly::symbol(vSym(3)));
  CHECK(symbolStr(vSym(1)) == "v'");
  CHECK(symbolStr(testSym(0, 4)) == "a0^(4)");
}

TEST_CASE("potential form rewrites v as 2(V-E)") {
  // F_2 = 1/2 a''' - 2 v a' - v' a becomes 1/2 a''' - 4 (V-E) a' - 2 V' a.
  DiffPoly f2 = computeF(2);
  CHECK(prettyForm(f2) == "(1/2)*a0''' + (-2)*v*a0' + (-1)*v'*a0");
  CHECK(prettyForm(f2.toPotentialForm()) ==
        "(1/2)*a0''' + (-4)*(V-E)*a0' + (-2)*V'*a0");
}

TEST_CASE("substitute maps v to the reduced potential") {
  // V = x^2/2 gives v = 2(V - E) = x^2 - 2E.
  Poly1 V = Poly1(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)});
  ParamPoly got = substitute(DiffPoly::symbol(vSym()), V, {}, 0);
  ParamPoly want = ParamPoly::monomial(0, Rational(1), 2, 0, {}) +
                   ParamPoly::monomial(0, Rational(-2), 0, 1, {});
  CHECK(got == want);

  // v' = 2x, independent of E.
  CHECK(substitute(DiffPoly::symbol(vSym(1)), V, {}, 0) ==
        ParamPoly::monomial(0, Rational(2), 1, 0, {}));
}

TEST_CASE("substituted gap function matches the harmonic witness") {
  // F_2 with a0 = -x and V = x^2/2 collapses to 4x^2 - 4E.
  Poly1 V = Poly1(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)});
  std::map<int, ParamPoly> assign;
  assign[0] = ParamPoly::fromPoly1(0, p1({0, -1}));
  ParamPoly got = substitute(computeF(2), V, assign, 0);
  ParamPoly want = ParamPoly::monomial(0, Rational(4), 2, 0, {}) +
                   ParamPoly::monomial(0, Rational(-4), 0, 1, {});
  CHECK(got == want);
}

TEST_CASE("substitution commutes with differentiation") {
  Poly1 V = p1({0, 1, 0, 2});  // x + 2x^3
  std::map<int, ParamPoly> assign;
  assign[0] = parseFamily("l1*x+l2*x^3");
  DiffPoly f3 = computeF(3);
  CHECK(substitute(f3.derive(), V, assign, 2) == substitute(f3, V, assign, 2).dx());
}

TEST_CASE("substituted polynomial evaluates like the dense coefficient form") {
  std::map<int, ParamPoly> assign;
  assign[0] = parseFamily("l1*x+l2*x^3");
  Poly1 V = p1({0, 0, 0, 0, 1});  // x^4
  ParamPoly F = substitute(computeF(2), V, assign, 2);
  const double E = 0.37;
  const std::vector<double> lam{0.8, -0.3};
  std::vector<double> cs = F.evalEL(E, lam);
  for (double x : {-1.7, -0.2, 0.0, 0.9, 2.3}) {
    double horner = 0.0;
    for (size_t k = cs.size(); k-- > 0;) horner = horner * x + cs[k];
    CHECK(horner == doctest::Approx(F.evalAll(x, E, lam)).epsilon(1e-12));
  }
}

TEST_CASE("parampoly calculus operators") {
  ParamPoly f = parseFamily("l1*x^2+l2*x*x");  // both terms collapse to x^2
  CHECK(f.arity() == 2);
  CHECK(f.maxDegX() == 2);
  CHECK(f.isLinearHomogeneousInLambda());

  ParamPoly g = parseFamily("l1*x^3");  // arity 1: highest index used
  CHECK(g.arity() == 1);
  CHECK(g.dx() == Rational(3) * parseFamily("l1*x^2"));
  CHECK(g.dE().isZero());
  CHECK(g.dLambda(0) == ParamPoly::monomial(1, Rational(1), 3, 0, {}));
  CHECK_THROWS_AS(g.dLambda(1), std::out_of_range);

  ParamPoly h = ParamPoly::E(0) * ParamPoly::E(0);
  CHECK(h.maxDegE() == 2);
  CHECK(h.dE() == Rational(2) * ParamPoly::E(0));
}

TEST_CASE("exact evaluation produces a rational coefficient polynomial") {
  ParamPoly F = parseFamily("l1*x^2") + ParamPoly::E(1);
  Poly1 p = F.evalELExact(Rational(1, 3), {Rational(2)});
  CHECK(p == Poly1(std::vector<Rational>{Rational(1, 3), Rational(0), Rational(2)}));
}

TEST_CASE("family parser accepts the documented grammar") {
  ParamPoly f = parseFamily("l1*x + l2*x^3");
  CHECK(f.arity() == 2);
  CHECK(f == ParamPoly::lambda(2, 0) * ParamPoly::x(2) +
            ParamPoly::lambda(2, 1) * ParamPoly::x(2) * ParamPoly::x(2) * ParamPoly::x(2));

  CHECK(parseFamily("0.5*x^2") == ParamPoly::monomial(0, Rational(1, 2), 2, 0, {}));
  CHECK(parseFamily("1/3*x") == ParamPoly::monomial(0, Rational(1, 3), 1, 0, {}));
  CHECK(parseFamily("-x") == ParamPoly::monomial(0, Rational(-1), 1, 0, {}));
  CHECK(parseFamily("2 - x^2") ==
        ParamPoly::constant(0, Rational(2)) - ParamPoly::x(0) * ParamPoly::x(0));
  // Arity comes from the highest index used, even with gaps.
  CHECK(parseFamily("l3*x").arity() == 3);
}

TEST_CASE("parser reports the offending column") {
  try {
    parseFamily("x^^2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column() == 3);
    CHECK(std::string(e.what()).find("column 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parseFamily(""), ParseError);
  CHECK_THROWS_AS(parseFamily("l0*x"), ParseError);   // parameters start at l1
  CHECK_THROWS_AS(parseFamily("2/0"), ParseError);    // zero denominator
  CHECK_THROWS_AS(parseFamily("x^70"), ParseError);   // exponent cap
  CHECK_THROWS_AS(parseFamily("x + "), ParseError);
  CHECK_THROWS_AS(parseFamily("y"), ParseError);
}

TEST_CASE("potential parser rejects family parameters") {
  CHECK(parsePotential("x^4-2*x^2") == p1({0, 0, -2, 0, 1}));
  CHECK(parsePotential("1/2*x^2") ==
        Poly1(std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)}));
  CHECK_THROWS_AS(parsePotential("l1*x"), ParseError);
}
