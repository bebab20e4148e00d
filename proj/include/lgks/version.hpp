#pragma once

namespace lgks {

inline constexpr const char* kToolName = "lgks";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace lgks
