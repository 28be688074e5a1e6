#pragma once

namespace occtime {
inline constexpr const char* kVersion = "0.1.0";
}
