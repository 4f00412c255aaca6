#include "dca/random.hpp"

#include <cmath>

#include "dca/error.hpp"

namespace dca {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t p_index, std::uint64_t trial_index) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 32;
  if (p_index >= kLimit || trial_index >= kLimit) {
    throw Error(Errc::invalid_argument, "seed derivation indices must be below 2^32");
  }
  return mix64(mix64(base_seed ^ mix64((p_index << 32) | trial_index)));
}

BernoulliSource::BernoulliSource(double p, std::uint64_t seed) : engine_(seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_argument, "Bernoulli parameter must lie in [0, 1]");
  threshold_ = static_cast<std::uint64_t>(std::ldexp(p, 53));
}

BitRow sample_bernoulli_bits(std::size_t n, double p, std::uint64_t seed) {
  BernoulliSource source(p, seed);
  BitRow row(n);
  for (std::size_t i = 0; i < n; ++i) row.set(i, source.next());
  return row;
}

}  // namespace dca
