#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "specgap/diffpoly.hpp"
#include "specgap/ladder.hpp"
#include "specgap/phipoly.hpp"

using namespace specgap;

namespace {

DiffPoly a(int n, int k = 0) { return DiffPoly::symbol(testSym(n, k)); }
DiffPoly v(int k = 0) { return DiffPoly::symbol(vSym(k)); }
Rational fr(long n, long d = 1) { return Rational(n, d); }

// A_N: the surviving component of N reduction passes on a generic vector.
DiffPoly computeAGeneric(int N) { return computeA(genericVector(N)); }

OpVector applyRTimes(OpVector b, int times) {
  for (int i = 0; i < times; ++i) b = applyR(b);
  return b;
}

}  // namespace

TEST_CASE("low-order reduced functionals match their hand forms") {
  CHECK(computeAGeneric(1) == -a(0, 1) + a(1));

  CHECK(computeAGeneric(2) ==
        fr(1, 2) * a(0, 2) - v() * a(0) - fr(1, 2) * a(1, 1) + a(2));

  CHECK(computeAGeneric(3) ==
        fr(-1, 6) * a(0, 3) + fr(7, 6) * (v() * a(0, 1)) + fr(2, 3) * (v(1) * a(0)) +
            fr(1, 6) * a(1, 2) - fr(1, 2) * (v() * a(1)) - fr(1, 3) * a(2, 1) + a(3));

  CHECK(computeAGeneric(4) ==
        fr(1, 24) * a(0, 4) - fr(2, 3) * (v() * a(0, 2)) - fr(3, 4) * (v(1) * a(0, 1)) -
            fr(1, 4) * (v(2) * a(0)) + v() * v() * a(0) - fr(1, 24) * a(1, 3) +
            fr(5, 12) * (v() * a(1, 1)) + fr(1, 4) * (v(1) * a(1)) + fr(1, 12) * a(2, 2) -
            fr(1, 3) * (v() * a(2)) - fr(1, 4) * a(3, 1) + a(4));
}

TEST_CASE("gap functions match their hand forms") {
  CHECK(computeF(1) == -a(0, 2) + v() * a(0));

  CHECK(computeF(2) == fr(1, 2) * a(0, 3) - fr(2) * (v() * a(0, 1)) - v(1) * a(0));

  CHECK(computeF(3) ==
        fr(-1, 6) * a(0, 4) + fr(5, 3) * (v() * a(0, 2)) + fr(5, 3) * (v(1) * a(0, 1)) +
            fr(1, 2) * (v(2) * a(0)) - fr(3, 2) * (v() * v() * a(0)));

  CHECK(computeF(4) ==
        fr(1, 24) * a(0, 5) - fr(5, 6) * (v() * a(0, 3)) - fr(5, 4) * (v(1) * a(0, 2)) -
            fr(3, 4) * (v(2) * a(0, 1)) + fr(8, 3) * (v() * v() * a(0, 1)) -
            fr(1, 6) * (v(3) * a(0)) + fr(8, 3) * (v() * v(1) * a(0)));
}

TEST_CASE("derivation operator on a generic N=2 vector") {
  OpVector g = genericVector(2);
  OpVector d = applyD(g);
  CHECK(d[0] == a(0, 1) + a(1));
  CHECK(d[1] == fr(2) * a(2) + a(1, 1) + fr(2) * (v() * a(0)));
  CHECK(d[2] == a(2, 1) + v() * a(1));
}

TEST_CASE("one reduction step on a generic N=2 vector") {
  OpVector r = applyR(genericVector(2));
  CHECK(r[0].isZero());
  CHECK(r[1] == -a(0, 1));
  CHECK(r[2] == fr(-1, 2) * a(1, 1) - v() * a(0) + a(2));
}

TEST_CASE("N reduction passes kill every component below the top") {
  for (int N = 1; N <= 6; ++N) {
    OpVector reduced = applyRTimes(genericVector(N), N);
    for (int n = 0; n < N; ++n) {
      CAPTURE(N);
      CAPTURE(n);
      CHECK(reduced[n].isZero());
    }
    CHECK_FALSE(reduced[N].isZero());
  }
}

TEST_CASE("each reduction step shifts the functional by an exact derivative") {
  for (int N = 1; N <= 4; ++N) {
    OpVector b = applyD(genericVector(N));
    for (int step = 0; step < N; ++step) {
      PhiPoly before = PhiPoly::fromOpVector(b);
      OpVector rb = applyR(b);
      PhiPoly after = PhiPoly::fromOpVector(rb);
      PhiPoly witness = PhiPoly::fromOpVector(shiftDown(b));
      CAPTURE(N);
      CAPTURE(step);
      CHECK(before - after == witness.totalDerivative());
      b = rb;
    }
  }
}

TEST_CASE("functional derivative identity holds symbolically") {
  for (int N = 1; N <= 5; ++N) {
    OpVector g = genericVector(N);
    CAPTURE(N);
    CHECK(PhiPoly::fromOpVector(applyD(g)) == PhiPoly::fromOpVector(g).totalDerivative());
  }
}

TEST_CASE("only the leading component feeds the gap function") {
  for (int N = 1; N <= 4; ++N)
    for (int n = 1; n <= N; ++n) {
      CAPTURE(N);
      CAPTURE(n);
      CHECK(kernelCheck(N, n));
    }
  for (int N = 7; N <= 8; ++N)
    for (int n = N - 1; n <= N; ++n) {
      CAPTURE(N);
      CAPTURE(n);
      CHECK(kernelCheck(N, n));
    }
  // n = 0 is the survivor: its residual is the gap function itself.
  for (int N = 1; N <= 4; ++N) CHECK(kernelResidual(N, 0) == computeF(N));
}

TEST_CASE("current divergence reproduces phi^N times the gap function") {
  for (int N = 1; N <= 4; ++N) {
    PhiPoly dj = PhiPoly::fromOpVector(computeJ(N)).totalDerivative();
    PhiPoly want;
    want.addTerm(0, N, computeF(N));
    CAPTURE(N);
    CHECK(dj == want);
  }
}

TEST_CASE("current vector closed forms at low order") {
  OpVector j1 = computeJ(1);
  CHECK(j1[0] == a(0));
  CHECK(j1[1] == -a(0, 1));

  OpVector j2 = computeJ(2);
  CHECK(j2[0] == a(0));
  CHECK(j2[1] == -a(0, 1));
  CHECK(j2[2] == fr(1, 2) * a(0, 2) - v() * a(0));
}

TEST_CASE("diagonal rotation and index shifts") {
  DiagOp down = diagDown(2);  // diag(0, 1, 2)
  DiagOp rot = rotateDiag(down, 1);
  CHECK(rot[0] == DiffPoly::constant(fr(1)));
  CHECK(rot[1] == DiffPoly::constant(fr(2)));
  CHECK(rot[2] == DiffPoly::constant(fr(0)));

  DiagOp b = diagB(3);  // entry n = (N-n-1)/(n+1)
  CHECK(b[0] == DiffPoly::constant(fr(2)));
  CHECK(b[1] == DiffPoly::constant(fr(1, 2)));
  CHECK(b[3] == DiffPoly::constant(fr(-1, 4)));

  for (int N = 1; N <= 8; ++N) {
    OpVector g = genericVector(N);
    for (const DiagOp& L : {diagDown(N), diagUp(N), diagA(N)}) {
      CAPTURE(N);
      CHECK(applyDiag(L, sMinus(g)) == sMinus(applyDiag(rotateDiag(L, 1), g)));
      CHECK(applyDiag(L, sPlus(g)) == sPlus(applyDiag(rotateDiag(L, -1), g)));
    }
  }
}

TEST_CASE("projection onto phi-degree zero") {
  PhiPoly p;
  p.addTerm(0, 2, DiffPoly::constant(fr(1)));
  p.addTerm(0, 1, DiffPoly::constant(fr(3)));
  p.addTerm(0, 0, DiffPoly::constant(fr(5)));
  PhiPoly reduced = p.pi0();
  CHECK(reduced.coeff(0, 0) == DiffPoly::constant(fr(5)));
  CHECK(reduced.coeff(0, 1).isZero());
  CHECK(reduced.coeff(0, 2).isZero());
  CHECK(reduced.pi0() == reduced);

  PhiPoly q = PhiPoly::fromOpVector(genericVector(3));
  CHECK(q.pi0().pi0() == q.pi0());
}

TEST_CASE("word weights and enumeration") {
  CHECK(wordWeight("A") == 1);
  CHECK(wordWeight("B") == 2);
  CHECK(wordWeight("AB") == 3);
  CHECK(wordsOfWeight(3).size() == 3);  // AAA, AB, BA
  CHECK(wordsOfWeight(4).size() == 5);
  for (const std::string& w : wordsOfWeight(4)) CHECK(wordWeight(w) == 4);
}

TEST_CASE("word coefficients: closed form equals the commutation product") {
  CHECK(alphaScan(4, 10).empty());
  // Spot values for single letters.
  CHECK(alphaDirect("A", 1) == fr(-1));
  CHECK(alphaDirect("A", 3) == fr(-1, 3));
  CHECK(alphaClosed("A", 3) == fr(-1, 3));
  CHECK(alphaDirect("B", 2) == alphaClosed("B", 2));
}

TEST_CASE("word expansion rebuilds the reduced functional") {
  for (int N = 1; N <= 4; ++N)
    for (int n = 0; n <= N; ++n) {
      DiffPoly byWords = wordExpansion(N, n);
      OpVector direct = applyRTimes(applyD(projectComponent(genericVector(N), n)), N);
      CAPTURE(N);
      CAPTURE(n);
      CHECK(byWords == direct[N]);
    }
}

TEST_CASE("factorial helpers") {
  CHECK(doubleFactorial(-1) == 1);
  CHECK(doubleFactorial(0) == 1);
  CHECK(doubleFactorial(5) == 15);
  CHECK(doubleFactorial(6) == 48);
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
}
