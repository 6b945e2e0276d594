#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "votegame/election.hpp"
#include "votegame/rng.hpp"

namespace votegame {

// One entry of L: a challenge ballot with the left and right votes the
// adversary asked for.
struct ChallengeTriple {
  Ballot ballot;
  Vote left;
  Vote right;

  auto operator<=>(const ChallengeTriple&) const = default;
};

using ChallengeSet = std::set<ChallengeTriple>;

struct OracleState {
  ChallengeSet challenges;
  bool beta = false;
  PublicKey pk;
  SecurityParameter k;
  std::size_t queries = 0;
  bool invalid_vote = false;
};

/// Vote(pk, v_beta, k), recorded in L. If either vote lies outside V the
/// query is flagged (the game is then lost) and nothing is returned or
/// recorded, whichever side beta selects.
std::optional<Ballot> oracle_query(OracleState& state, Vote v0, Vote v1,
                                   const ElectionScheme& scheme, const CandidateSet& candidates,
                                   Rng& rng);

/// For every v in V, the board holds as many challenge ballots with v on the
/// left as with v on the right.
bool balanced(const BulletinBoard& bb, const CandidateSet& candidates, const ChallengeSet& L);

// The adversary's handle on the challenge oracle. It is only usable while
// the adversary builds its board; later calls throw std::logic_error.
class ChallengeOracle {
 public:
  ChallengeOracle(OracleState& state, const ElectionScheme& scheme,
                  const CandidateSet& candidates, Rng& rng)
      : state_(&state), scheme_(&scheme), candidates_(&candidates), rng_(&rng) {}

  std::optional<Ballot> query(Vote v0, Vote v1);
  void close() { open_ = false; }

 private:
  OracleState* state_;
  const ElectionScheme* scheme_;
  const CandidateSet* candidates_;
  Rng* rng_;
  bool open_ = true;
};

// Adversaries are stateful: one instance lives for exactly one game.
class BallotSecrecyAdversary {
 public:
  virtual ~BallotSecrecyAdversary() = default;
  virtual BulletinBoard stage_board(const PublicKey& pk, SecurityParameter k,
                                    ChallengeOracle& oracle) = 0;
  virtual bool stage_guess(const BulletinBoard& bb, const Evidence& e) = 0;
};

class NonMalleabilityAdversary {
 public:
  virtual ~NonMalleabilityAdversary() = default;
  virtual std::pair<Vote, Vote> stage_votes(const PublicKey& pk, SecurityParameter k) = 0;
  virtual BulletinBoard stage_board(const Ballot& challenge) = 0;
  virtual bool stage_guess(const Outcome& outcome) = 0;
};

enum class Disqualification {
  none,
  unbalanced,
  challenge_on_board,
  invalid_vote,
};

std::string_view to_string(Disqualification d);

struct GameResult {
  bool won = false;
  Disqualification disqualified = Disqualification::none;
  bool beta = false;
  bool guess = false;
  std::size_t oracle_queries = 0;
  BulletinBoard board;
};

GameResult play_ballot_secrecy(const ElectionScheme& scheme, BallotSecrecyAdversary& adversary,
                               const CandidateSet& candidates, SecurityParameter k, Rng& rng);

GameResult play_non_malleability(const ElectionScheme& scheme,
                                 NonMalleabilityAdversary& adversary,
                                 const CandidateSet& candidates, SecurityParameter k, Rng& rng);

using BallotSecrecyFactory = std::function<std::unique_ptr<BallotSecrecyAdversary>(
    const ElectionScheme& scheme, std::uint64_t adversary_seed)>;
using NonMalleabilityFactory = std::function<std::unique_ptr<NonMalleabilityAdversary>(
    const ElectionScheme& scheme, std::uint64_t adversary_seed)>;

// The alternative held selects the game that is played.
using AdversaryFactory = std::variant<BallotSecrecyFactory, NonMalleabilityFactory>;

// Trial i of a run seeded with s uses game stream derive_seed(s', 0) and
// adversary stream derive_seed(s', 1) where s' = derive_seed(s, i). Both
// games consume the game stream in the same order (setup, beta, challenge
// ballot), which is what lets a reduction replay an inner adversary's
// trials exactly.
struct TrialSeeds {
  std::uint64_t game;
  std::uint64_t adversary;
};

TrialSeeds trial_seeds(std::uint64_t run_seed, std::uint64_t trial);

GameResult play_trial(const ElectionScheme& scheme, const AdversaryFactory& factory,
                      const CandidateSet& candidates, SecurityParameter k, std::uint64_t run_seed,
                      std::uint64_t trial);

class TrialFault : public std::runtime_error {
 public:
  TrialFault(std::size_t trial, const std::string& what)
      : std::runtime_error("trial " + std::to_string(trial) + " faulted: " + what), trial_(trial) {}
  std::size_t trial() const { return trial_; }

 private:
  std::size_t trial_;
};

/// Plays n independent trials. Any exception escaping a game aborts the run
/// as a TrialFault for the lowest faulting trial index. Results do not depend
/// on the thread count.
std::vector<GameResult> play_trials(const ElectionScheme& scheme, const AdversaryFactory& factory,
                                    const CandidateSet& candidates, SecurityParameter k,
                                    std::size_t n, std::uint64_t seed, unsigned threads = 1);

struct TrialStats {
  std::size_t trials = 0;
  std::size_t wins = 0;
  std::size_t disqualified = 0;
  double rate = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;

  bool operator==(const TrialStats&) const = default;
};

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

TrialStats summarize(const std::vector<GameResult>& results);

TrialStats run_trials(const ElectionScheme& scheme, const AdversaryFactory& factory,
                      const CandidateSet& candidates, SecurityParameter k, std::size_t n,
                      std::uint64_t seed, unsigned threads = 1);

}  // namespace votegame
