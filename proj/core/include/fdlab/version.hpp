#pragma once

namespace fdlab {
inline constexpr const char* kVersion = "0.1.0";
}
