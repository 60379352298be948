#pragma once

#include <string_view>

namespace kbg {

inline constexpr std::string_view kToolVersion = "1.0.0";

}  // namespace kbg
