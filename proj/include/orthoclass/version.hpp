#pragma once

namespace ortho {

inline constexpr const char* version_string = "0.1.0";

// Bumped whenever the on-disk model layout changes incompatibly.
inline constexpr int model_format_version = 1;

} // namespace ortho
