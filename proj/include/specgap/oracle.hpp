#pragma once

#include <string>
#include <vector>

#include "specgap/poly1.hpp"

namespace specgap {

// Independent numerical spectra for -1/2 phi'' + V phi = E phi on [-L, L]
// with Dirichlet walls. Two unrelated discretizations so they can
// cross-check each other.

struct EigenvalueRecord {
  double value = 0;    // best estimate (Richardson-extrapolated for fd)
  double convEst = 0;  // |E(M) - E(M/2)|, crude error gauge
  int nodeCount = -1;  // interior sign changes of the eigenfunction
};

struct Spectrum {
  std::string method;  // "fd" or "shoot"
  double L = 0;
  int M = 0;
  std::vector<EigenvalueRecord> eigenvalues;
  std::vector<std::string> warnings;
  std::vector<std::string> failures;
};

/// Lowest k eigenvalues of the central-difference matrix, found by
/// Sturm-count bisection, with Richardson extrapolation from M/2.
Spectrum eigensolveFD(const Poly1& V, double L, int M, int k);

/// Raw grid eigenvalues at resolution M (no extrapolation); exposed for
/// order-of-convergence studies.
std::vector<double> fdGridEigenvalues(const Poly1& V, double L, int M, int k);

/// Lowest k eigenvalues by Numerov shooting with matching at the
/// potential minimum; node-count bracketing then Wronskian bisection.
Spectrum eigensolveShoot(const Poly1& V, double L, int k, int M = 16384);

struct Trajectory {
  double E = 0, h = 0;
  std::vector<double> x, phi, dphi;
  bool overflow = false;
};

/// RK4 integration of phi'' = 2(V - E) phi from (phi0, dphi0) at x0.
/// Stops early (overflow flag) if the state magnitude passes 1e300.
Trajectory odeSolve(const Poly1& V, double E, double x0, double phi0, double dphi0, double xEnd,
                    double h);

struct DivergenceReport {
  double maxResidual = 0;
  double h = 0;
  int samples = 0;
};

/// Numerically validates d/dx P_j = phi^N F_N along an actual trajectory:
/// builds the conserved-current coefficients for (N, a0, V), integrates a
/// solution at energy E, normalizes the state, and measures the worst
/// centered-difference defect of the identity on the interior grid.
DivergenceReport divergenceCheck(int N, const Poly1& a0, const Poly1& V, double E, double xLo,
                                 double xHi, double h);

}  // namespace specgap
