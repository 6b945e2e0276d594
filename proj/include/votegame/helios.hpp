#pragma once

#include <string>
#include <vector>

#include "votegame/election.hpp"
#include "votegame/group.hpp"

namespace votegame {

// Homomorphic ballot: one exponential ElGamal ciphertext per candidate
// encrypting 0 or 1, a bit proof for each, and an overall proof that the
// product of the ciphertexts encrypts exactly 1.
struct HeliosBallot {
  std::vector<Ciphertext> ciphertexts;
  std::vector<DisjunctiveProof> individual_proofs;
  DisjunctiveProof overall_proof;

  bool operator==(const HeliosBallot&) const = default;
};

// Public key material: the group, h = g^x and the election identifier that
// every proof context binds.
struct HeliosPublicKey {
  ElGamalPublicKey elgamal;
  std::string election_id;

  bool operator==(const HeliosPublicKey&) const = default;
};

struct HeliosSecretKey {
  ElGamalKeyPair elgamal;
  std::string election_id;

  HeliosPublicKey public_key() const { return {elgamal.public_key(), election_id}; }
};

inline constexpr std::string_view kHeliosBallotTag = "helios";

PublicKey encode_public_key(const HeliosPublicKey& pk);
HeliosPublicKey decode_public_key(const PublicKey& pk);
SecretKey encode_secret_key(const HeliosSecretKey& sk);
HeliosSecretKey decode_secret_key(const SecretKey& sk);

Ballot encode_helios_ballot(const HeliosBallot& ballot);
/// Throws ParseError on a foreign tag or malformed payload.
HeliosBallot decode_helios_ballot(const Ballot& ballot);

// Fiat-Shamir context: "votegame/helios-proof", p, q, g, h, election id,
// then "individual" with the candidate index or "overall" with 0.
Bytes individual_proof_context(const HeliosPublicKey& pk, std::size_t candidate);
Bytes overall_proof_context(const HeliosPublicKey& pk);

/// Structure plus every proof. The candidate count is taken from the ballot.
bool verify_helios_ballot(const HeliosPublicKey& pk, const HeliosBallot& ballot,
                          Verification mode);

/// Decodes then verifies; false for anything that does not decode.
bool verify_helios_ballot(const HeliosPublicKey& pk, const Ballot& ballot, Verification mode);

/// Per-candidate plaintexts, or nullopt if some ciphertext is not a bit.
std::optional<std::vector<std::uint64_t>> decrypt_helios_ballot(const HeliosSecretKey& sk,
                                                                const HeliosBallot& ballot);

struct MaulChoice {
  std::size_t candidate = 0;
  std::size_t branch = 0;
};

/// Adds q to one individual-proof response. The ciphertexts are untouched,
/// so the result encrypts the same vote and still passes lenient
/// verification. Throws std::invalid_argument if the input does not verify
/// leniently or the choice is out of range.
HeliosBallot maul_ballot(const HeliosPublicKey& pk, const HeliosBallot& ballot, MaulChoice choice);
Ballot maul_ballot(const HeliosPublicKey& pk, const Ballot& ballot, MaulChoice choice);

class HeliosScheme final : public ElectionScheme {
 public:
  static constexpr std::string_view kDefaultElectionId = "votegame-election";

  HeliosScheme(std::size_t num_candidates, Verification mode,
               std::string election_id = std::string(kDefaultElectionId));

  std::string_view name() const override;
  std::string_view ballot_tag() const override { return kHeliosBallotTag; }
  std::size_t num_candidates() const override { return num_candidates_; }
  Verification mode() const { return mode_; }

  KeyPair setup(SecurityParameter k, Rng& rng) const override;
  std::optional<Ballot> vote(const PublicKey& pk, Vote v, SecurityParameter k,
                             Rng& rng) const override;
  Evidence partial_tally(const SecretKey& sk, const BulletinBoard& bb,
                         SecurityParameter k) const override;
  Outcome recover(const BulletinBoard& bb, const Evidence& e, const PublicKey& pk) const override;

  /// The validity check partial_tally applies: this scheme's mode and arity.
  bool accepts(const HeliosPublicKey& pk, const Ballot& ballot) const;

  HeliosBallot make_ballot(const HeliosPublicKey& pk, Vote v, Rng& rng) const;

 private:
  std::optional<HeliosBallot> validated(const HeliosPublicKey& pk, const Ballot& ballot) const;

  std::size_t num_candidates_;
  Verification mode_;
  std::string election_id_;
};

}  // namespace votegame
