#pragma once

namespace tzone {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tzone
