#pragma once

#include <string_view>

namespace erw {

inline constexpr std::string_view version = "1.0.0";

}  // namespace erw
