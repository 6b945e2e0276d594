#include "votegame/group.hpp"

#include <array>
#include <stdexcept>

#include <openssl/evp.h>

namespace votegame {

namespace {

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class mulm(const mpz_class& a, const mpz_class& b, const mpz_class& mod) {
  mpz_class out = a * b;
  mpz_mod(out.get_mpz_t(), out.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class mod_q(mpz_class x, const mpz_class& q) {
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), q.get_mpz_t());
  return x;
}

std::optional<mpz_class> invert(const mpz_class& x, const mpz_class& mod) {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  return out;
}

bool probably_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRounds) != 0;
}

bool in_range(const mpz_class& x, const mpz_class& lo, const mpz_class& hi) {
  return x >= lo && x < hi;
}

// b / g^v, the second component of the ciphertext with the claimed
// plaintext removed.
std::optional<mpz_class> strip_plaintext(const ElGamalPublicKey& pk, const mpz_class& b,
                                         std::uint64_t v) {
  const auto& gp = pk.params;
  auto inv = invert(powm(gp.generator, mpz_class(static_cast<unsigned long>(v)), gp.p), gp.p);
  if (!inv) {
    return std::nullopt;
  }
  return mulm(b, *inv, gp.p);
}

std::vector<mpz_class> transcript_of(const Ciphertext& c, std::span<const ProofBranch> branches) {
  std::vector<mpz_class> t{c.a, c.b};
  for (const auto& br : branches) {
    t.push_back(br.commitment_a);
    t.push_back(br.commitment_b);
  }
  return t;
}

constexpr std::array<std::uint64_t, 2> kBitValues{0, 1};

}  // namespace

bool is_valid_group(const GroupParams& gp) {
  if (gp.p != 2 * gp.q + 1) return false;
  if (!probably_prime(gp.q) || !probably_prime(gp.p)) return false;
  if (gp.generator <= 1 || gp.generator >= gp.p) return false;
  return powm(gp.generator, gp.q, gp.p) == 1;
}

GroupParams gen_group(SecurityParameter k, Rng& rng) {
  const unsigned q_bits = k.bits() - 1;
  GroupParams gp;
  for (;;) {
    mpz_class q = rng.exact_bits(q_bits);
    mpz_setbit(q.get_mpz_t(), 0);
    // q = 1 (mod 3) forces 3 | 2q + 1.
    if (q > 3 && mpz_fdiv_ui(q.get_mpz_t(), 3) == 1) continue;
    if (!probably_prime(q)) continue;
    mpz_class p = 2 * q + 1;
    if (!probably_prime(p)) continue;
    gp.p = std::move(p);
    gp.q = std::move(q);
    break;
  }
  // Squares of Z_p^* form the order-q subgroup; any square other than 1
  // generates it because q is prime.
  do {
    mpz_class x = rng.between(2, gp.p - 1);
    gp.generator = mulm(x, x, gp.p);
  } while (gp.generator == 1);
  return gp;
}

GroupParams make_group(mpz_class p, mpz_class q, mpz_class generator) {
  GroupParams gp{std::move(p), std::move(q), std::move(generator)};
  if (!is_valid_group(gp)) {
    throw std::invalid_argument("group parameters fail p = 2q + 1 / primality / generator checks");
  }
  return gp;
}

bool in_subgroup(const GroupParams& gp, const mpz_class& element) {
  return in_range(element, 1, gp.p) && powm(element, gp.q, gp.p) == 1;
}

ElGamalKeyPair gen_keypair(const GroupParams& params, Rng& rng) {
  return keypair_from_secret(params, rng.between(1, params.q));
}

ElGamalKeyPair keypair_from_secret(const GroupParams& params, mpz_class x) {
  if (!in_range(x, 1, params.q)) {
    throw std::invalid_argument("secret exponent must lie in [1, q)");
  }
  mpz_class h = powm(params.generator, x, params.p);
  return ElGamalKeyPair{params, std::move(x), std::move(h)};
}

RandomCoin random_coin(const GroupParams& params, Rng& rng) {
  return RandomCoin{rng.between(1, params.q)};
}

Ciphertext encrypt(const ElGamalPublicKey& pk, const mpz_class& v, const RandomCoin& r) {
  const auto& gp = pk.params;
  return Ciphertext{powm(gp.generator, r.value, gp.p),
                    mulm(powm(pk.h, r.value, gp.p), powm(gp.generator, v, gp.p), gp.p)};
}

Ciphertext add_ciphertexts(const Ciphertext& lhs, const Ciphertext& rhs, const mpz_class& p) {
  return Ciphertext{mulm(lhs.a, rhs.a, p), mulm(lhs.b, rhs.b, p)};
}

std::optional<std::uint64_t> decrypt_exponent(const ElGamalKeyPair& sk, const Ciphertext& c,
                                              std::uint64_t max) {
  const auto& gp = sk.params;
  auto mask_inv = invert(powm(c.a, sk.x, gp.p), gp.p);
  if (!mask_inv) {
    return std::nullopt;
  }
  const mpz_class target = mulm(c.b, *mask_inv, gp.p);
  mpz_class cur = 1;
  for (std::uint64_t v = 0;; ++v) {
    if (cur == target) return v;
    if (v == max) break;
    cur = mulm(cur, gp.generator, gp.p);
  }
  return std::nullopt;
}

mpz_class fiat_shamir(std::span<const std::uint8_t> context, std::span<const mpz_class> transcript,
                      const mpz_class& q) {
  ByteWriter w;
  w.put_bytes(context);
  for (const auto& x : transcript) {
    w.put_int(x);
  }
  const auto& input = w.bytes();

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(input.data(), input.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  return mod_q(bytes_to_int(std::span<const std::uint8_t>(digest.data(), len)), q);
}

namespace detail {

DisjunctiveProof prove_membership_with_simulated_response(
    const ElGamalPublicKey& pk, const Ciphertext& c, std::span<const std::uint64_t> allowed,
    std::size_t actual, const RandomCoin& r, std::span<const std::uint8_t> context, Rng& rng,
    std::optional<mpz_class> simulated_response) {
  if (actual >= allowed.size()) {
    throw std::invalid_argument("prove_membership: actual index outside allowed set");
  }
  const auto& gp = pk.params;
  DisjunctiveProof proof;
  proof.branches.resize(allowed.size());

  mpz_class simulated_sum = 0;
  for (std::size_t d = 0; d < allowed.size(); ++d) {
    if (d == actual) continue;
    auto& br = proof.branches[d];
    br.challenge = rng.below(gp.q);
    br.response = simulated_response ? *simulated_response : rng.below(gp.q);
    auto stripped = strip_plaintext(pk, c.b, allowed[d]);
    auto a_c = invert(powm(c.a, br.challenge, gp.p), gp.p);
    auto b_c = stripped ? invert(powm(*stripped, br.challenge, gp.p), gp.p) : std::nullopt;
    if (!a_c || !b_c) {
      throw std::invalid_argument("prove_membership: ciphertext component not invertible");
    }
    br.commitment_a = mulm(powm(gp.generator, br.response, gp.p), *a_c, gp.p);
    br.commitment_b = mulm(powm(pk.h, br.response, gp.p), *b_c, gp.p);
    simulated_sum += br.challenge;
  }

  const mpz_class w = rng.below(gp.q);
  auto& real = proof.branches[actual];
  real.commitment_a = powm(gp.generator, w, gp.p);
  real.commitment_b = powm(pk.h, w, gp.p);

  const mpz_class challenge = fiat_shamir(context, transcript_of(c, proof.branches), gp.q);
  real.challenge = mod_q(challenge - simulated_sum, gp.q);
  real.response = mod_q(w + real.challenge * r.value, gp.q);
  return proof;
}

}  // namespace detail

DisjunctiveProof prove_membership(const ElGamalPublicKey& pk, const Ciphertext& c,
                                  std::span<const std::uint64_t> allowed, std::size_t actual,
                                  const RandomCoin& r, std::span<const std::uint8_t> context,
                                  Rng& rng) {
  return detail::prove_membership_with_simulated_response(pk, c, allowed, actual, r, context, rng,
                                                          std::nullopt);
}

bool verify_membership(const ElGamalPublicKey& pk, const Ciphertext& c,
                       const DisjunctiveProof& proof, std::span<const std::uint64_t> allowed,
                       std::span<const std::uint8_t> context, Verification mode) {
  const auto& gp = pk.params;
  if (proof.branches.size() != allowed.size() || allowed.empty()) return false;
  if (!in_subgroup(gp, c.a) || !in_subgroup(gp, c.b)) return false;

  mpz_class challenge_sum = 0;
  for (std::size_t d = 0; d < allowed.size(); ++d) {
    const auto& br = proof.branches[d];
    if (!in_range(br.commitment_a, 1, gp.p) || !in_range(br.commitment_b, 1, gp.p)) return false;
    if (!in_range(br.challenge, 0, gp.q)) return false;
    if (sgn(br.response) < 0) return false;
    if (mode == Verification::strict && br.response >= gp.q) return false;

    auto stripped = strip_plaintext(pk, c.b, allowed[d]);
    if (!stripped) return false;
    // g^t == A * a^c and h^t == B * (b / g^v)^c
    if (powm(gp.generator, br.response, gp.p) !=
        mulm(br.commitment_a, powm(c.a, br.challenge, gp.p), gp.p)) {
      return false;
    }
    if (powm(pk.h, br.response, gp.p) !=
        mulm(br.commitment_b, powm(*stripped, br.challenge, gp.p), gp.p)) {
      return false;
    }
    challenge_sum += br.challenge;
  }
  return mod_q(challenge_sum, gp.q) == fiat_shamir(context, transcript_of(c, proof.branches), gp.q);
}

DisjunctiveProof prove_bit(const ElGamalPublicKey& pk, std::uint64_t v, const RandomCoin& r,
                           const Ciphertext& c, std::span<const std::uint8_t> context, Rng& rng) {
  if (v > 1) {
    throw std::invalid_argument("prove_bit: plaintext must be 0 or 1");
  }
  return prove_membership(pk, c, kBitValues, static_cast<std::size_t>(v), r, context, rng);
}

bool verify_disjunctive(const ElGamalPublicKey& pk, const Ciphertext& c,
                        const DisjunctiveProof& proof, std::span<const std::uint8_t> context) {
  return verify_membership(pk, c, proof, kBitValues, context, Verification::lenient);
}

bool verify_disjunctive_strict(const ElGamalPublicKey& pk, const Ciphertext& c,
                               const DisjunctiveProof& proof,
                               std::span<const std::uint8_t> context) {
  return verify_membership(pk, c, proof, kBitValues, context, Verification::strict);
}

void write_group(ByteWriter& w, const GroupParams& gp) {
  w.put_int(gp.p).put_int(gp.q).put_int(gp.generator);
}

GroupParams read_group(ByteReader& r) {
  GroupParams gp;
  gp.p = r.get_int();
  gp.q = r.get_int();
  gp.generator = r.get_int();
  return gp;
}

void write_ciphertext(ByteWriter& w, const Ciphertext& c) {
  w.put_int(c.a).put_int(c.b);
}

Ciphertext read_ciphertext(ByteReader& r) {
  Ciphertext c;
  c.a = r.get_int();
  c.b = r.get_int();
  return c;
}

void write_proof(ByteWriter& w, const DisjunctiveProof& proof) {
  w.put_uint(proof.branches.size());
  for (const auto& br : proof.branches) {
    w.put_int(br.commitment_a).put_int(br.commitment_b).put_int(br.challenge).put_int(br.response);
  }
}

DisjunctiveProof read_proof(ByteReader& r) {
  const auto n = r.get_uint();
  // Bound before allocating.
  if (n > 1024) {
    throw ParseError("proof declares too many branches");
  }
  DisjunctiveProof proof;
  proof.branches.resize(n);
  for (auto& br : proof.branches) {
    br.commitment_a = r.get_int();
    br.commitment_b = r.get_int();
    br.challenge = r.get_int();
    br.response = r.get_int();
  }
  return proof;
}

}  // namespace votegame
