#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include <gmpxx.h>

namespace votegame {

// Seedable randomness stream handed to every probabilistic operation.
// All sampling is done by rejection on raw 64-bit draws, so a given seed
// yields the same values on every platform and standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  bool bit() { return (engine_() >> 63) != 0; }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform in [0, bound). bound must be positive.
  mpz_class below(const mpz_class& bound);

  /// Uniform in [lo, hi). Requires lo < hi.
  mpz_class between(const mpz_class& lo, const mpz_class& hi);

  /// Uniform integer with exactly `bits` bits (top bit set).
  mpz_class exact_bits(unsigned bits);

 private:
  mpz_class raw_bits(unsigned bits);

  std::mt19937_64 engine_;
};

// SplitMix64 finalizer. A bijection on 64-bit words, used to derive
// independent child seeds from (seed, index) pairs.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ index);
}

}  // namespace votegame
