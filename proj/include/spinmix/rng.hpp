#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace spinmix {

inline constexpr std::string_view kRngAlgorithm = "xoshiro256ss+splitmix64";

/// xoshiro256** seeded through splitmix64.  stream(seed, k) gives
/// independent per-trial generators.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace spinmix
