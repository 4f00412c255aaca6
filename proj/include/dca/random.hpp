#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dca/bitrow.hpp"

namespace dca {

// Identifies the sampling scheme in output metadata:
//   generator  std::mt19937_64 seeded with the 64-bit seed (sequence fixed by the C++ standard);
//   bernoulli  a cell is 1 iff (next() >> 11) < floor(p * 2^53);
//   splitting  seed(base, i, j) = mix64(mix64(base ^ mix64((i << 32) | j))) with the SplitMix64
//              finalizer mix64, injective for i, j < 2^32.
inline constexpr std::string_view kPrngId = "mt19937_64/bernoulli53/splitmix64-split/v1";

std::uint64_t mix64(std::uint64_t x) noexcept;

// Throws Error(invalid_argument) if either index is >= 2^32.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t p_index, std::uint64_t trial_index);

class BernoulliSource {
 public:
  // Throws Error(invalid_argument) unless 0 <= p <= 1.
  BernoulliSource(double p, std::uint64_t seed);

  bool next() noexcept { return (engine_() >> 11) < threshold_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t threshold_;
};

BitRow sample_bernoulli_bits(std::size_t n, double p, std::uint64_t seed);

}  // namespace dca
