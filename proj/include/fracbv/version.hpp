#pragma once

namespace fracbv {

inline constexpr const char* kToolName = "fracbv";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kGammaImpl = "std::tgamma";

}  // namespace fracbv
