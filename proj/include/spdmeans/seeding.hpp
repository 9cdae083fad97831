#pragma once

#include <cstdint>
#include <string_view>

namespace spdmeans {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Independent per-sample seed: each (base, tag, index) triple maps to its own
/// stream, so sweeps can run in any order or in parallel with identical output.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(fnv1a64(tag) + 0x9e3779b97f4a7c15ULL * index));
}

}  // namespace spdmeans
