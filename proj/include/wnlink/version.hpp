#pragma once

namespace wnlink {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kModelFormatVersion = 1;
inline constexpr int kWorldFormatVersion = 1;

}  // namespace wnlink
