#include "specgap/ladder.hpp"

#include <cassert>
#include <stdexcept>

namespace specgap {

namespace {
const DiffPoly kV = DiffPoly::symbol(vSym());

int checkedN(const OpVector& a) {
  if (a.empty()) throw std::invalid_argument("OpVector: empty");
  return static_cast<int>(a.size()) - 1;
}
}  // namespace

OpVector genericVector(int N) {
  OpVector a(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) a[static_cast<size_t>(n)] = DiffPoly::symbol(testSym(n));
  return a;
}

OpVector projectComponent(const OpVector& a, int n) {
  OpVector r(a.size());
  r[static_cast<size_t>(n)] = a[static_cast<size_t>(n)];
  return r;
}

OpVector applyD(const OpVector& a) {
  const int N = checkedN(a);
  OpVector r(a.size());
  for (int n = 0; n <= N; ++n) {
    DiffPoly t = a[static_cast<size_t>(n)].derive();
    if (n + 1 <= N) t += Rational(n + 1) * a[static_cast<size_t>(n) + 1];
    if (n - 1 >= 0) t += Rational(N - n + 1) * (kV * a[static_cast<size_t>(n) - 1]);
    r[static_cast<size_t>(n)] = std::move(t);
  }
  return r;
}

OpVector applyR(const OpVector& a) {
  const int N = checkedN(a);
  OpVector r(a.size());
  for (int n = 1; n <= N; ++n) {
    DiffPoly t = Rational(-1, n) * a[static_cast<size_t>(n) - 1].derive();
    if (n >= 2) t -= Rational(N - n + 1, n - 1) * (kV * a[static_cast<size_t>(n) - 2]);
    if (n == N) t += a[static_cast<size_t>(N)];
    r[static_cast<size_t>(n)] = std::move(t);
  }
  return r;
}

OpVector shiftDown(const OpVector& b) {
  const int N = checkedN(b);
  OpVector r(b.size());
  for (int n = 0; n < N; ++n)
    r[static_cast<size_t>(n) + 1] = Rational(1, n + 1) * b[static_cast<size_t>(n)];
  return r;
}

DiffPoly computeA(const OpVector& b) {
  const int N = checkedN(b);
  OpVector r = b;
  for (int k = 0; k < N; ++k) r = applyR(r);
  for (int n = 0; n < N; ++n) assert(r[static_cast<size_t>(n)].isZero());
  return r[static_cast<size_t>(N)];
}

DiffPoly computeF(int N) {
  OpVector a(static_cast<size_t>(N) + 1);
  a[0] = DiffPoly::symbol(testSym(0));
  return computeA(applyD(a));
}

DiffPoly kernelResidual(int N, int n) {
  return computeA(applyD(projectComponent(genericVector(N), n)));
}

bool kernelCheck(int N, int n) { return kernelResidual(N, n).isZero(); }

OpVector computeJ(const OpVector& a) {
  const int N = checkedN(a);
  OpVector j = a;
  OpVector b = applyD(a);
  for (int k = 0; k < N; ++k) {
    OpVector s = shiftDown(b);
    for (int n = 0; n <= N; ++n) j[static_cast<size_t>(n)] -= s[static_cast<size_t>(n)];
    b = applyR(b);
  }
  return j;
}

OpVector computeJ(int N) {
  OpVector a(static_cast<size_t>(N) + 1);
  a[0] = DiffPoly::symbol(testSym(0));
  return computeJ(a);
}

DiagOp makeDiag(const std::vector<Rational>& entries) {
  DiagOp d(entries.size());
  for (size_t n = 0; n < entries.size(); ++n) d[n] = DiffPoly::constant(entries[n]);
  return d;
}

DiagOp diagDown(int N) {
  std::vector<Rational> e;
  for (int n = 0; n <= N; ++n) e.emplace_back(n);
  return makeDiag(e);
}

DiagOp diagUp(int N) {
  std::vector<Rational> e;
  for (int n = 0; n <= N; ++n) e.emplace_back(N - n);
  return makeDiag(e);
}

DiagOp diagA(int N) {
  std::vector<Rational> e;
  for (int n = 0; n <= N; ++n) e.emplace_back(1, n + 1);
  return makeDiag(e);
}

DiagOp diagB(int N) {
  std::vector<Rational> e;
  for (int n = 0; n <= N; ++n) e.emplace_back(N - n - 1, n + 1);
  return makeDiag(e);
}

OpVector applyDiag(const DiagOp& diag, const OpVector& a) {
  if (diag.size() != a.size()) throw std::invalid_argument("applyDiag: size mismatch");
  OpVector r(a.size());
  for (size_t n = 0; n < a.size(); ++n) r[n] = diag[n] * a[n];
  return r;
}

DiagOp rotateDiag(const DiagOp& diag, int k) {
  const int m = static_cast<int>(diag.size());
  DiagOp r(diag.size());
  for (int n = 0; n < m; ++n)
    r[static_cast<size_t>(n)] = diag[static_cast<size_t>((((n + k) % m) + m) % m)];
  return r;
}

OpVector sMinus(const OpVector& a) {
  OpVector r(a.size());
  for (size_t n = 1; n < a.size(); ++n) r[n] = a[n - 1];
  return r;
}

OpVector sPlus(const OpVector& a) {
  OpVector r(a.size());
  for (size_t n = 0; n + 1 < a.size(); ++n) r[n] = a[n + 1];
  return r;
}

int wordWeight(const std::string& w) {
  int s = 0;
  for (char c : w) {
    if (c == 'A')
      s += 1;
    else if (c == 'B')
      s += 2;
    else
      throw std::invalid_argument("word: letters must be A or B");
  }
  return s;
}

std::vector<std::string> wordsOfWeight(int s) {
  if (s < 0) return {};
  if (s == 0) return {""};
  std::vector<std::string> out;
  for (const auto& w : wordsOfWeight(s - 1)) out.push_back("A" + w);
  if (s >= 2)
    for (const auto& w : wordsOfWeight(s - 2)) out.push_back("B" + w);
  return out;
}

std::vector<std::string> wordsUpToLength(int maxLen) {
  std::vector<std::string> out{""};
  size_t levelBegin = 0;
  for (int len = 1; len <= maxLen; ++len) {
    size_t levelEnd = out.size();
    for (size_t i = levelBegin; i < levelEnd; ++i) {
      out.push_back(out[i] + "A");
      out.push_back(out[i] + "B");
    }
    levelBegin = levelEnd;
  }
  return out;
}

Rational alphaDirect(const std::string& w, int N) {
  if (wordWeight(w) > N) throw std::invalid_argument("alphaDirect: word weight exceeds N");
  Rational coeff(1);
  int s = 0;
  for (char c : w) {
    if (c == 'A') {
      coeff *= Rational(-1, N - s);
      s += 1;
    } else {
      coeff *= Rational(-(s + 1), N - s - 1);
      s += 2;
    }
  }
  return coeff;
}

Rational alphaClosed(const std::string& w, int N) {
  if (wordWeight(w) > N) throw std::invalid_argument("alphaClosed: word weight exceeds N");
  Rational r = (w.size() % 2 == 0) ? Rational(1) : Rational(-1);
  int S = 0;
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const int run = static_cast<int>(j - i);
    if (w[i] == 'A') {
      r *= Rational(factorial(N - S - run)) / Rational(factorial(N - S));
      S += run;
    } else {
      r *= Rational(doubleFactorial(S + 2 * run - 1)) / Rational(doubleFactorial(S - 1));
      r *= Rational(doubleFactorial(N - S - 2 * run - 1)) / Rational(doubleFactorial(N - S - 1));
      S += 2 * run;
    }
    i = j;
  }
  return r;
}

DiffPoly applyWordOps(const std::string& w, const DiffPoly& seed) {
  DiffPoly r = seed;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (*it == 'A')
      r = r.derive();
    else
      r = kV * r;
  }
  return r;
}

DiffPoly wordExpansion(int N, int n) {
  if (n < 0 || n > N) throw std::out_of_range("wordExpansion: component out of range");
  const DiffPoly an = DiffPoly::symbol(testSym(n));
  struct Case {
    int shift;
    DiffPoly seed;
  };
  std::vector<Case> cases;
  if (n >= 1) cases.push_back({N + 1 - n, Rational(n) * an});
  cases.push_back({N - n, an.derive()});
  if (n <= N - 1) cases.push_back({N - n - 1, Rational(N - n) * (kV * an)});
  DiffPoly result;
  for (const auto& c : cases)
    for (const auto& w : wordsOfWeight(c.shift))
      result += alphaDirect(w, N) * applyWordOps(w, c.seed);
  return result;
}

std::vector<AlphaMismatch> alphaScan(int maxLetters, int maxN) {
  std::vector<AlphaMismatch> bad;
  for (const auto& w : wordsUpToLength(maxLetters)) {
    for (int N = std::max(wordWeight(w), 1); N <= maxN; ++N) {
      Rational d = alphaDirect(w, N);
      Rational c = alphaClosed(w, N);
      if (!(d == c)) bad.push_back({w, N, d, c});
    }
  }
  return bad;
}

mpz_class factorial(long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpz_class doubleFactorial(long n) {
  if (n < -1) throw std::domain_error("doubleFactorial: argument below -1");
  if (n <= 0) return 1;
  mpz_class r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

}  // namespace specgap
