#pragma once

#include <cstdint>
#include <string_view>

namespace kr {

// FNV-1a 64-bit hash; used to fingerprint canonicalized configurations.
inline constexpr std::uint64_t fnv1a64(std::string_view s,
                                       std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace kr
