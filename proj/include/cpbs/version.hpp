// version.hpp — artifact identity stamped into output files

#pragma once

namespace cpbs {

inline constexpr const char* kName = "cpbs";
inline constexpr const char* kVersion = "0.1.0";

} // namespace cpbs
