#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "specgap/gapcert.hpp"
#include "specgap/multidim.hpp"
#include "specgap/oracle.hpp"

namespace specgap {

using Json = nlohmann::ordered_json;

/// Echo of the settings a scan ran with; serialized into every gap report
/// so a run can be reproduced from its output alone.
struct RunConfig {
  std::string potential;
  std::string family;
  int N = 2;
  ScanConfig scan;
};

Json configJson(const RunConfig& cfg);
Json gapReport(const RunConfig& cfg, const std::vector<GapInterval>& gaps,
               const Spectrum* oracle);
Json spectrumReport(const std::string& potential, const Spectrum& s);
Json multidimReport(int d, const Nullspace& ns, const std::vector<CriticalPoint>& cps,
                    const std::vector<std::pair<double, double>>& d2Checks);

/// True when no oracle eigenvalue sits inside any reported interval by more
/// than the oracle's own convergence estimate.
bool checkDisjoint(const std::vector<GapInterval>& gaps, const Spectrum& s);

}  // namespace specgap
