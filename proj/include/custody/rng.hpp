#pragma once

#include <cstdint>
#include <random>

namespace custody {

/// Identifier recorded next to every sampled artifact.  Changing the generator
/// or the bounded-draw method must change this string.
inline constexpr const char* kRngAlgorithm = "mt19937_64/rejection-v1";

/// std::mt19937_64 (fully specified by the standard) with a bounded draw that
/// does not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Independent seed for sub-stream `index` of `seed`.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

}  // namespace custody
