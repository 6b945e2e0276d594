#pragma once

#include "votegame/election.hpp"

namespace votegame {

// Baseline scheme without encryption. A ballot carries the candidate index
// in the clear plus a random nonce so that two voters choosing the same
// candidate still cast distinct ballots on a set-semantics board. Evidence
// is the plaintext count vector.
class DummyScheme final : public ElectionScheme {
 public:
  static constexpr std::string_view kTag = "dummy";

  explicit DummyScheme(std::size_t num_candidates);

  std::string_view name() const override { return kTag; }
  std::string_view ballot_tag() const override { return kTag; }
  std::size_t num_candidates() const override { return num_candidates_; }

  KeyPair setup(SecurityParameter k, Rng& rng) const override;
  std::optional<Ballot> vote(const PublicKey& pk, Vote v, SecurityParameter k,
                             Rng& rng) const override;
  Evidence partial_tally(const SecretKey& sk, const BulletinBoard& bb,
                         SecurityParameter k) const override;
  Outcome recover(const BulletinBoard& bb, const Evidence& e, const PublicKey& pk) const override;

  /// Plaintext vote of a well-formed dummy ballot, or nullopt.
  std::optional<Vote> read_vote(const Ballot& ballot) const;

 private:
  std::size_t num_candidates_;
};

}  // namespace votegame
