#pragma once

#include <string>
#include <vector>

#include "specgap/diffpoly.hpp"

namespace specgap {

/// Vector of ring elements indexed by component 0..N; size is always N+1.
using OpVector = std::vector<DiffPoly>;

/// (a_0, a_1, ..., a_N) as formal symbols.
OpVector genericVector(int N);

/// Keeps only component n.
OpVector projectComponent(const OpVector& a, int n);

/// (Da)_n = (n+1) a_{n+1} + a_n' + (N-n+1) v a_{n-1}, out-of-range terms zero.
/// Satisfies D(P_a) = P_{Da} for P_a = sum_n a_n phi'^{N-n} phi^n.
OpVector applyD(const OpVector& a);

/// Reduction step: (Ra)_0 = 0 and for n >= 1
///   (Ra)_n = -(1/n) a_{n-1}' - ((N-n+1)/(n-1)) v a_{n-2} + [n == N] a_N
/// with the middle term present only for n >= 2. Each application changes
/// P_a by an exact x-derivative (see shiftDown).
OpVector applyR(const OpVector& a);

/// The antiderivative witness for one R step:
/// P_b - P_{Rb} = D(P_{shiftDown(b)}). Component n+1 is b_n/(n+1), b_N drops.
OpVector shiftDown(const OpVector& b);

/// (R^N b)_N. Components 0..N-1 of R^N b vanish identically; asserted.
DiffPoly computeA(const OpVector& b);

/// Gap function F_N = A_N[D(a_0, 0, ..., 0)], a polynomial in v, its
/// derivatives and a_0^(k).
DiffPoly computeF(int N);

/// A_N[D proj_n(a)] for a generic vector; identically zero for n >= 1,
/// so only a_0 feeds the gap function.
DiffPoly kernelResidual(int N, int n);
bool kernelCheck(int N, int n);

/// Current vector j with D(P_j) = phi^N F_N when a = (a_0, 0, ..., 0):
/// j = a - sum_{k=0}^{N-1} shiftDown(R^k D a).
OpVector computeJ(const OpVector& a);
OpVector computeJ(int N);

/// Diagonal operator: entrywise multipliers.
using DiagOp = std::vector<DiffPoly>;

DiagOp makeDiag(const std::vector<Rational>& entries);
DiagOp diagDown(int N);  // diag(0, 1, ..., N)
DiagOp diagUp(int N);    // diag(N, ..., 1, 0)
DiagOp diagA(int N);     // entry n = 1/(n+1)
DiagOp diagB(int N);     // entry n = (N-n-1)/(n+1)

OpVector applyDiag(const DiagOp& diag, const OpVector& a);

/// Rotated diagonal: entry n of the result is entry (n + k) mod (N+1).
DiagOp rotateDiag(const DiagOp& diag, int k);

/// Index shifts with zero fill: (S-a)_n = a_{n-1}, (S+a)_n = a_{n+1}.
/// Both satisfy S Lambda = Lambda^(-/+1) S against rotateDiag.
OpVector sMinus(const OpVector& a);
OpVector sPlus(const OpVector& a);

/// Words over the alphabet {A, B}. A advances the component index by one and
/// differentiates; B advances by two and multiplies by v.
int wordWeight(const std::string& w);
std::vector<std::string> wordsOfWeight(int s);
std::vector<std::string> wordsUpToLength(int maxLen);

/// Scalar coefficient of a word, as the product of diagonal entries picked up
/// while commuting the index shifts out to the right. Requires weight <= N.
Rational alphaDirect(const std::string& w, int N);

/// Same coefficient from the run-length closed form: with A-runs l_i and
/// B-runs m_i at cumulative shift S,
///   alpha = (-1)^{#letters} * prod_A (N-S-l_i)!/(N-S)!
///         * prod_B ((S+2m_i-1)!!/(S-1)!!) ((N-S-2m_i-1)!!/(N-S-1)!!).
Rational alphaClosed(const std::string& w, int N);

/// Letters act right to left on the seed: A differentiates, B multiplies by v.
DiffPoly applyWordOps(const std::string& w, const DiffPoly& seed);

/// A_N[D proj_n(a)] rebuilt from the word sum: words of weight N+1-n seeded
/// with n a_n, weight N-n seeded with a_n', weight N-n-1 seeded with
/// (N-n) v a_n.
DiffPoly wordExpansion(int N, int n);

struct AlphaMismatch {
  std::string word;
  int N = 0;
  Rational direct;
  Rational closed;
};

/// Compares the two alpha routes over every word of at most maxLetters
/// letters and every N from the word weight up to maxN.
std::vector<AlphaMismatch> alphaScan(int maxLetters, int maxN);

/// n!! with (-1)!! = 0!! = 1.
mpz_class doubleFactorial(long n);
mpz_class factorial(long n);

}  // namespace specgap
