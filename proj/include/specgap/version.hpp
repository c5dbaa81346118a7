#pragma once

namespace specgap {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace specgap
