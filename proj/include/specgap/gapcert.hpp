#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specgap/parampoly.hpp"
#include "specgap/poly1.hpp"

namespace specgap {

/// Strict sign classification on the whole real line. A polynomial with any
/// real root is Indefinite even if it never changes sign (x^2 is Indefinite).
enum class SignVerdict { PositiveDefinite, NegativeDefinite, Indefinite, IdenticallyZero };

std::string verdictStr(SignVerdict v);

/// Number of distinct real roots via the Sturm chain, exact.
int countRealRoots(const Poly1& p);
/// Distinct real roots in (lo, hi], exact.
int countRealRootsBetween(const Poly1& p, const Rational& lo, const Rational& hi);

SignVerdict sturmSign(const Poly1& p);

/// Isolates every distinct real root to an interval of width <= widthTol,
/// then polishes with a few Newton steps; returns approximations.
std::vector<double> isolateRealRoots(const Poly1& p, double widthTol = 1e-12);

/// Minimum of p over its real critical points. Leading coefficient <= 0 or
/// odd degree returns -inf; a constant returns its own value.
double marginPoly(const Poly1& p);
double margin(const ParamPoly& F, double E, const std::vector<double>& lambda);

struct LambdaBox {
  double lo = 0.0;
  double hi = 0.0;
  bool isEmpty() const { return !(lo <= hi); }
};

struct LambdaWitness {
  std::vector<double> lambda;
  double margin = 0.0;        // margin of the sign-oriented polynomial, > 0
  SignVerdict verdict = SignVerdict::Indefinite;
};

/// Searches the box for lambda making F(.,E,lambda) strictly definite of
/// either sign: deterministic coarse grid, Nelder-Mead refinement on the
/// sampled margin, then exact Sturm validation at the rationalized lambda.
/// Deterministic for a fixed seed. An empty box yields no witness.
std::optional<LambdaWitness> findLambda(const ParamPoly& F, double E, const LambdaBox& box,
                                        int budget, uint64_t seed);

struct Witness {
  double E = 0.0;
  std::vector<double> lambda;
  double margin = 0.0;
};

struct GapInterval {
  double eLow = 0.0;  // ignored when unboundedBelow
  double eHigh = 0.0;
  bool unboundedBelow = false;
  std::vector<Witness> witnesses;  // every entry re-validated by sturmSign
};

struct ScanConfig {
  double eLo = 0.0;
  double eHi = 0.0;
  double eStep = 1e-2;
  LambdaBox box{-2.0, 2.0};
  double tol = 1e-6;  // boundary bisection width
  int budget = 600;   // objective evaluations per findLambda call
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
  bool tailCheck = true;
  int minWitnesses = 3;
};

/// Grid scan over E, merge runs of certified points, bisect the boundaries,
/// and attach interior witnesses. Deterministic: every findLambda call is
/// seeded from (seed, grid index). Runs with eLo > eHi return nothing.
std::vector<GapInterval> scanGaps(const ParamPoly& F, const ScanConfig& cfg);

struct TailCertificate {
  bool certified = false;
  double eBound = 0.0;
  std::vector<double> lambda;
  std::string reason;  // why certification was refused, empty on success
};

/// Certifies the half line (-inf, E0]: needs F affine in E, a definite
/// witness at E0, and -sign * dF/dE positive (or F independent of E).
TailCertificate certifyBelow(const ParamPoly& F, double E0, const LambdaBox& box, int budget,
                             uint64_t seed);

struct BifurcationPoint {
  bool converged = false;
  double x = 0.0;
  double E = 0.0;
  std::vector<double> lambda;
  double residual = 0.0;  // sup norm of the stacked system at the result
  double dEF = 0.0;
  double dxxF = 0.0;
  // |dEF| * |dxxF| above threshold, from local numeric values. A boundary
  // with an exactly flat curvature can still read as nondegenerate when the
  // root is of high multiplicity and Newton stalls short of it; compare
  // dxxF against problem scales before trusting the flag.
  bool nondegenerate = false;
  bool degenerateLambda = false;  // rank-deficient lambda block of the Jacobian
  int iterations = 0;
};

/// Damped least-squares Newton on the stacked system
/// [F, dF/dx, dF/dlambda_1..p] = 0 in unknowns (x, E, lambda), with a unit
/// normalization row added for lambda-homogeneous families. Derivatives are
/// symbolic, evaluated in floating point.
BifurcationPoint bifurcationSolve(const ParamPoly& F, double x0, double E0,
                                  const std::vector<double>& lambda0, int maxIter = 200);

}  // namespace specgap
