#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "votegame/games.hpp"
#include "votegame/helios.hpp"

namespace votegame {

// Baseline with no strategy: empty board, fixed guess. Plays either game.
class NullAdversary final : public BallotSecrecyAdversary, public NonMalleabilityAdversary {
 public:
  explicit NullAdversary(bool fixed_guess = true) : fixed_guess_(fixed_guess) {}

  BulletinBoard stage_board(const PublicKey&, SecurityParameter, ChallengeOracle&) override {
    return {};
  }
  bool stage_guess(const BulletinBoard&, const Evidence&) override { return fixed_guess_; }

  std::pair<Vote, Vote> stage_votes(const PublicKey&, SecurityParameter) override {
    return {Vote{0}, Vote{1}};
  }
  BulletinBoard stage_board(const Ballot&) override { return {}; }
  bool stage_guess(const Outcome&) override { return fixed_guess_; }

 private:
  bool fixed_guess_;
};

// Non-malleability attacker against the Helios-style scheme. It asks for a
// challenge on candidates 0 and 1, replaces the challenge by a mauled copy
// (one individual-proof response shifted by q), pads the board with ballots
// it cast itself, and reads the challenge vote off the tally residual.
class MalleabilityAdversary final : public NonMalleabilityAdversary {
 public:
  static std::vector<Vote> default_known_votes() { return {Vote{0}, Vote{1}}; }

  MalleabilityAdversary(const ElectionScheme& scheme, std::uint64_t seed,
                        std::vector<Vote> known_votes = default_known_votes(),
                        MaulChoice choice = {});

  std::pair<Vote, Vote> stage_votes(const PublicKey& pk, SecurityParameter k) override;
  BulletinBoard stage_board(const Ballot& challenge) override;
  bool stage_guess(const Outcome& outcome) override;

  /// The public key seen in stage_votes, decoded.
  const std::optional<HeliosPublicKey>& public_key() const { return helios_pk_; }
  const std::optional<Ballot>& mauled() const { return mauled_; }
  const std::vector<std::pair<Ballot, Vote>>& known_ballots() const { return known_; }
  /// True if the last guess came from the random fallback.
  bool guessed_randomly() const { return guessed_randomly_; }

  /// Residual rule on its own: outcome minus the adversary's own votes.
  /// nullopt unless exactly one unit remains and it sits on v0 or v1.
  static std::optional<bool> deduce(const Outcome& outcome, std::span<const Vote> own_votes,
                                    Vote v0, Vote v1);

 private:
  const ElectionScheme* scheme_;
  Rng rng_;
  std::vector<Vote> known_votes_;
  MaulChoice choice_;

  std::optional<PublicKey> pk_;
  std::optional<HeliosPublicKey> helios_pk_;
  std::optional<SecurityParameter> k_;
  Vote v0_{0};
  Vote v1_{1};
  std::vector<std::pair<Ballot, Vote>> known_;
  std::optional<Ballot> mauled_;
  bool guessed_randomly_ = false;
};

// Ballot-secrecy adversary built from a non-malleability adversary: it plays
// the NM challenger towards `inner` using one oracle query for the challenge
// ballot and Recover for the outcome.
class ReductionAdversary final : public BallotSecrecyAdversary {
 public:
  ReductionAdversary(std::unique_ptr<NonMalleabilityAdversary> inner,
                     const ElectionScheme& scheme);

  BulletinBoard stage_board(const PublicKey& pk, SecurityParameter k,
                            ChallengeOracle& oracle) override;
  bool stage_guess(const BulletinBoard& bb, const Evidence& e) override;

  std::size_t queries() const { return queries_; }
  const NonMalleabilityAdversary& inner() const { return *inner_; }

 private:
  std::unique_ptr<NonMalleabilityAdversary> inner_;
  const ElectionScheme* scheme_;
  std::optional<PublicKey> pk_;
  std::size_t queries_ = 0;
};

std::unique_ptr<BallotSecrecyAdversary> build_reduction(
    std::unique_ptr<NonMalleabilityAdversary> inner, const ElectionScheme& scheme);

BallotSecrecyFactory null_ballot_secrecy_factory(bool fixed_guess = true);
NonMalleabilityFactory null_non_malleability_factory(bool fixed_guess = true);
NonMalleabilityFactory malleability_factory(
    std::vector<Vote> known_votes = MalleabilityAdversary::default_known_votes());

/// Wraps every inner adversary the factory makes, with the same seed.
BallotSecrecyFactory reduction_factory(NonMalleabilityFactory inner);

}  // namespace votegame
