#pragma once

#include <cstdint>

namespace gwkde {

// Counter-based generator: draw i of stream s is a pure function of
// (seed, s, i), so replications can run in any order on any thread
// partition and still produce identical values.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed + kGold * (stream + 1))) {}

  // Uniform draw in the open interval (0, 1).
  double uniform(std::uint64_t i) const {
    const std::uint64_t z = mix(key_ + kGold * (i + 1));
    return (static_cast<double>(z >> 11) + 0.5) * 0x1p-53;
  }

private:
  static constexpr std::uint64_t kGold = 0x9e3779b97f4a7c15ull;

  // SplitMix64 finalizer; full avalanche on 64 bits.
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
};

}  // namespace gwkde
