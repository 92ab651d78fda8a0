#pragma once

namespace solitonlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace solitonlab
