#pragma once

namespace dmu {

inline constexpr const char* version = "0.1.0";

}  // namespace dmu
