#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "votegame/election.hpp"
#include "votegame/encoding.hpp"
#include "votegame/rng.hpp"

namespace votegame {

inline constexpr int kPrimalityRounds = 40;

// Order-q subgroup of Z_p^* for a safe prime p = 2q + 1.
struct GroupParams {
  mpz_class p;
  mpz_class q;
  mpz_class generator;

  bool operator==(const GroupParams&) const = default;
};

bool is_valid_group(const GroupParams& params);

/// Fresh group with a k-bit safe prime modulus.
GroupParams gen_group(SecurityParameter k, Rng& rng);

/// Wraps caller-chosen parameters (e.g. p = 23) after validating them.
GroupParams make_group(mpz_class p, mpz_class q, mpz_class generator);

bool in_subgroup(const GroupParams& params, const mpz_class& element);

struct ElGamalPublicKey {
  GroupParams params;
  mpz_class h;

  bool operator==(const ElGamalPublicKey&) const = default;
};

struct ElGamalKeyPair {
  GroupParams params;
  mpz_class x;
  mpz_class h;

  ElGamalPublicKey public_key() const { return {params, h}; }
  bool operator==(const ElGamalKeyPair&) const = default;
};

ElGamalKeyPair gen_keypair(const GroupParams& params, Rng& rng);
ElGamalKeyPair keypair_from_secret(const GroupParams& params, mpz_class x);

struct RandomCoin {
  mpz_class value;
};

/// Uniform in [1, q).
RandomCoin random_coin(const GroupParams& params, Rng& rng);

struct Ciphertext {
  mpz_class a;  // g^r
  mpz_class b;  // h^r * g^v

  bool operator==(const Ciphertext&) const = default;
};

Ciphertext encrypt(const ElGamalPublicKey& pk, const mpz_class& v, const RandomCoin& r);

/// Componentwise product mod p; decrypts to the sum of the exponents.
Ciphertext add_ciphertexts(const Ciphertext& lhs, const Ciphertext& rhs, const mpz_class& p);

/// Searches v in [0, max] with b * a^-x = g^v. nullopt if none matches.
std::optional<std::uint64_t> decrypt_exponent(const ElGamalKeyPair& sk, const Ciphertext& c,
                                              std::uint64_t max);

// One disjunct of a Chaum-Pedersen OR-proof: commitment (A, B), challenge
// and response for the statement "c encrypts allowed[d]".
struct ProofBranch {
  mpz_class commitment_a;
  mpz_class commitment_b;
  mpz_class challenge;
  mpz_class response;

  bool operator==(const ProofBranch&) const = default;
};

struct DisjunctiveProof {
  std::vector<ProofBranch> branches;

  bool operator==(const DisjunctiveProof&) const = default;
};

enum class Verification {
  lenient,  // responses enter only through exponentiation, t and t + q are equivalent
  strict,   // additionally requires 0 <= t < q for every response
};

/// SHA-256 of put_bytes(context) followed by put_int(x) for every transcript
/// element, read as a big-endian integer and reduced mod q.
mpz_class fiat_shamir(std::span<const std::uint8_t> context, std::span<const mpz_class> transcript,
                      const mpz_class& q);

/// Non-interactive proof that `c = encrypt(pk, allowed[actual], r)` encrypts
/// one of `allowed`. The branch for `actual` is real; the others are
/// simulated.
DisjunctiveProof prove_membership(const ElGamalPublicKey& pk, const Ciphertext& c,
                                  std::span<const std::uint64_t> allowed, std::size_t actual,
                                  const RandomCoin& r, std::span<const std::uint8_t> context,
                                  Rng& rng);

bool verify_membership(const ElGamalPublicKey& pk, const Ciphertext& c,
                       const DisjunctiveProof& proof, std::span<const std::uint64_t> allowed,
                       std::span<const std::uint8_t> context, Verification mode);

/// Proof that c encrypts 0 or 1. Throws std::invalid_argument for v > 1.
DisjunctiveProof prove_bit(const ElGamalPublicKey& pk, std::uint64_t v, const RandomCoin& r,
                           const Ciphertext& c, std::span<const std::uint8_t> context, Rng& rng);

bool verify_disjunctive(const ElGamalPublicKey& pk, const Ciphertext& c,
                        const DisjunctiveProof& proof, std::span<const std::uint8_t> context);

bool verify_disjunctive_strict(const ElGamalPublicKey& pk, const Ciphertext& c,
                               const DisjunctiveProof& proof,
                               std::span<const std::uint8_t> context);

void write_group(ByteWriter& w, const GroupParams& params);
GroupParams read_group(ByteReader& r);
void write_ciphertext(ByteWriter& w, const Ciphertext& c);
Ciphertext read_ciphertext(ByteReader& r);
void write_proof(ByteWriter& w, const DisjunctiveProof& proof);
DisjunctiveProof read_proof(ByteReader& r);

namespace detail {

// Prover with every simulated branch's response pinned to a chosen value.
// Exists so tests can reach boundary responses such as q - 1.
DisjunctiveProof prove_membership_with_simulated_response(
    const ElGamalPublicKey& pk, const Ciphertext& c, std::span<const std::uint64_t> allowed,
    std::size_t actual, const RandomCoin& r, std::span<const std::uint8_t> context, Rng& rng,
    std::optional<mpz_class> simulated_response);

}  // namespace detail

}  // namespace votegame
