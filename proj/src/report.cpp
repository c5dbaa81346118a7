#include "specgap/report.hpp"

#include <algorithm>

#include "specgap/version.hpp"

namespace specgap {

Json configJson(const RunConfig& cfg) {
  Json j;
  j["potential"] = cfg.potential;
  j["family"] = cfg.family;
  j["N"] = cfg.N;
  j["eLo"] = cfg.scan.eLo;
  j["eHi"] = cfg.scan.eHi;
  j["eStep"] = cfg.scan.eStep;
  j["lambdaBox"] = {cfg.scan.box.lo, cfg.scan.box.hi};
  j["tol"] = cfg.scan.tol;
  j["budget"] = cfg.scan.budget;
  j["seed"] = cfg.scan.seed;
  j["threads"] = cfg.scan.threads;
  return j;
}

namespace {

Json spectrumEntries(const Spectrum& s) {
  Json arr = Json::array();
  for (const auto& r : s.eigenvalues) {
    Json e;
    e["value"] = r.value;
    e["convEst"] = r.convEst;
    e["nodeCount"] = r.nodeCount;
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

Json gapReport(const RunConfig& cfg, const std::vector<GapInterval>& gaps,
               const Spectrum* oracle) {
  Json j;
  j["toolVersion"] = kToolVersion;
  j["config"] = configJson(cfg);
  Json arr = Json::array();
  for (const auto& g : gaps) {
    Json gi;
    if (g.unboundedBelow)
      gi["eLow"] = nullptr;
    else
      gi["eLow"] = g.eLow;
    gi["eHigh"] = g.eHigh;
    gi["unboundedBelow"] = g.unboundedBelow;
    Json ws = Json::array();
    for (const auto& w : g.witnesses) {
      Json wj;
      wj["E"] = w.E;
      wj["lambda"] = w.lambda;
      wj["margin"] = w.margin;
      ws.push_back(wj);
    }
    gi["witnesses"] = ws;
    arr.push_back(gi);
  }
  j["gaps"] = arr;
  if (oracle) {
    j["oracleSpectrum"] = spectrumEntries(*oracle);
    j["disjoint"] = checkDisjoint(gaps, *oracle);
  } else {
    j["oracleSpectrum"] = nullptr;
    j["disjoint"] = nullptr;
  }
  return j;
}

Json spectrumReport(const std::string& potential, const Spectrum& s) {
  Json j;
  j["toolVersion"] = kToolVersion;
  j["potential"] = potential;
  j["method"] = s.method;
  j["L"] = s.L;
  j["M"] = s.M;
  j["eigenvalues"] = spectrumEntries(s);
  j["warnings"] = s.warnings;
  j["failures"] = s.failures;
  return j;
}

Json multidimReport(int d, const Nullspace& ns, const std::vector<CriticalPoint>& cps,
                    const std::vector<std::pair<double, double>>& d2Checks) {
  Json j;
  j["toolVersion"] = kToolVersion;
  j["d"] = d;
  j["paramCount"] = h0ParamCount(d);
  j["nullspaceDim"] = ns.dim;
  j["maxBasisDegree"] = ns.maxBasisDegree;
  Json arr = Json::array();
  for (const auto& cp : cps) {
    Json c;
    c["x"] = cp.x;
    c["E"] = cp.E;
    c["residual"] = cp.residual;
    c["converged"] = cp.converged;
    arr.push_back(c);
  }
  j["criticalPoints"] = arr;
  Json checks = Json::array();
  for (const auto& [E, val] : d2Checks) {
    Json c;
    c["E"] = E;
    c["integral"] = val;
    checks.push_back(c);
  }
  j["d2IntegralChecks"] = checks;
  return j;
}

bool checkDisjoint(const std::vector<GapInterval>& gaps, const Spectrum& s) {
  for (const auto& g : gaps)
    for (const auto& r : s.eigenvalues) {
      double slack = std::max(r.convEst, 1e-12);
      bool aboveLow = g.unboundedBelow || r.value > g.eLow + slack;
      bool belowHigh = r.value < g.eHigh - slack;
      if (aboveLow && belowHigh) return false;
    }
  return true;
}

}  // namespace specgap
