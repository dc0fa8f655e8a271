#pragma once

namespace ckstk {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace ckstk
