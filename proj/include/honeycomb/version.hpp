#pragma once

namespace honeycomb {

inline constexpr const char* version = "0.1.0";

} // namespace honeycomb
