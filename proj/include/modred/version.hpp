#pragma once

namespace modred {
inline constexpr const char* kVersion = "1.0.0";
}
