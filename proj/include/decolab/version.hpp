#pragma once

namespace decolab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace decolab
