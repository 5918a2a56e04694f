#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace epr {

// Seeded 64-bit random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the [0,1) mapping below uses the top
// 53 bits so it does not depend on the library's distribution classes.
class RandomStream {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit RandomStream(std::uint64_t seed);

  // Independent stream for block `index` of a run seeded with `seed`.
  static RandomStream for_block(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive well-separated sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace epr
