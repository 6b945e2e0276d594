#include "votegame/rng.hpp"

#include <stdexcept>

namespace votegame {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("Rng::below: bound must be positive");
  }
  // Largest multiple of bound that fits, to avoid modulo bias.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % bound;
}

mpz_class Rng::raw_bits(unsigned bits) {
  mpz_class out = 0;
  unsigned remaining = bits;
  while (remaining > 0) {
    unsigned take = remaining < 64 ? remaining : 64;
    std::uint64_t word = engine_();
    if (take < 64) {
      word >>= (64 - take);
    }
    out <<= take;
    mpz_class w;
    mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
    out += w;
    remaining -= take;
  }
  return out;
}

mpz_class Rng::below(const mpz_class& bound) {
  if (sgn(bound) <= 0) {
    throw std::invalid_argument("Rng::below: bound must be positive");
  }
  if (bound == 1) {
    return 0;
  }
  const mpz_class top = bound - 1;
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(top.get_mpz_t(), 2));
  mpz_class x;
  do {
    x = raw_bits(bits);
  } while (x >= bound);
  return x;
}

mpz_class Rng::between(const mpz_class& lo, const mpz_class& hi) {
  if (lo >= hi) {
    throw std::invalid_argument("Rng::between: empty range");
  }
  return lo + below(mpz_class(hi - lo));
}

mpz_class Rng::exact_bits(unsigned bits) {
  if (bits == 0) {
    throw std::invalid_argument("Rng::exact_bits: bits must be positive");
  }
  mpz_class x = raw_bits(bits);
  mpz_setbit(x.get_mpz_t(), bits - 1);
  return x;
}

}  // namespace votegame
