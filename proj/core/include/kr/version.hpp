#pragma once

namespace kr {

inline constexpr const char* kLibraryVersion = "1.0.0";

// Engine identifiers stamped into CSV headers so downstream plots can tell
// which implementation produced a given file.
inline constexpr const char* kQuantumEngineVersion = "quantum/1.0.0";
inline constexpr const char* kEclassicalEngineVersion = "eclassical/1.0.0";

}  // namespace kr
