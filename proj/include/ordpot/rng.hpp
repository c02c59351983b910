#pragma once

#include <cstdint>

namespace ordpot {

// Counter-based seed derivation: splitmix64 finalizer applied to
// master + (index + 1) * golden-ratio increment. Distinct indices give
// independent-looking seeds, so parallel work items never share a stream.
inline std::uint64_t splitmix64_at(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace ordpot
