#include "votegame/games.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

namespace votegame {

std::optional<Ballot> oracle_query(OracleState& state, Vote v0, Vote v1,
                                   const ElectionScheme& scheme, const CandidateSet& candidates,
                                   Rng& rng) {
  ++state.queries;
  if (!v0.valid_for(candidates.size()) || !v1.valid_for(candidates.size())) {
    state.invalid_vote = true;
    return std::nullopt;
  }
  auto b = scheme.vote(state.pk, state.beta ? v1 : v0, state.k, rng);
  if (!b) {
    throw std::logic_error("scheme rejected an in-range vote");
  }
  state.challenges.insert(ChallengeTriple{*b, v0, v1});
  return b;
}

bool balanced(const BulletinBoard& bb, const CandidateSet& candidates, const ChallengeSet& L) {
  // For each on-board challenge ballot, the distinct votes it was issued
  // with on each side.
  std::map<Ballot, std::pair<std::set<std::size_t>, std::set<std::size_t>>> sides;
  for (const auto& t : L) {
    if (!bb.contains(t.ballot)) continue;
    auto& [left, right] = sides[t.ballot];
    left.insert(t.left.candidate);
    right.insert(t.right.candidate);
  }
  for (std::size_t v = 0; v < candidates.size(); ++v) {
    std::size_t as_left = 0;
    std::size_t as_right = 0;
    for (const auto& [ballot, s] : sides) {
      as_left += s.first.count(v);
      as_right += s.second.count(v);
    }
    if (as_left != as_right) return false;
  }
  return true;
}

std::optional<Ballot> ChallengeOracle::query(Vote v0, Vote v1) {
  if (!open_) {
    throw std::logic_error("challenge oracle queried outside the board-building stage");
  }
  return oracle_query(*state_, v0, v1, *scheme_, *candidates_, *rng_);
}

std::string_view to_string(Disqualification d) {
  switch (d) {
    case Disqualification::none:
      return "none";
    case Disqualification::unbalanced:
      return "unbalanced board";
    case Disqualification::challenge_on_board:
      return "challenge ballot on board";
    case Disqualification::invalid_vote:
      return "vote outside candidate set";
  }
  return "unknown";
}

namespace {

void require_arity(const ElectionScheme& scheme, const CandidateSet& candidates) {
  if (scheme.num_candidates() != candidates.size()) {
    throw std::invalid_argument("scheme arity does not match the candidate set");
  }
}

}  // namespace

GameResult play_ballot_secrecy(const ElectionScheme& scheme, BallotSecrecyAdversary& adversary,
                               const CandidateSet& candidates, SecurityParameter k, Rng& rng) {
  require_arity(scheme, candidates);
  const KeyPair keys = scheme.setup(k, rng);
  OracleState state{{}, rng.bit(), keys.public_key, k};

  ChallengeOracle oracle(state, scheme, candidates, rng);
  BulletinBoard bb = adversary.stage_board(keys.public_key, k, oracle);
  oracle.close();

  const Evidence e = scheme.partial_tally(keys.secret_key, bb, k);
  const bool guess = adversary.stage_guess(bb, e);

  GameResult result;
  result.beta = state.beta;
  result.guess = guess;
  result.oracle_queries = state.queries;
  if (state.invalid_vote) {
    result.disqualified = Disqualification::invalid_vote;
  } else if (!balanced(bb, candidates, state.challenges)) {
    result.disqualified = Disqualification::unbalanced;
  }
  result.won = guess == state.beta && result.disqualified == Disqualification::none;
  result.board = std::move(bb);
  return result;
}

GameResult play_non_malleability(const ElectionScheme& scheme,
                                 NonMalleabilityAdversary& adversary,
                                 const CandidateSet& candidates, SecurityParameter k, Rng& rng) {
  require_arity(scheme, candidates);
  const KeyPair keys = scheme.setup(k, rng);
  const bool beta = rng.bit();

  GameResult result;
  result.beta = beta;

  const auto [v0, v1] = adversary.stage_votes(keys.public_key, k);
  if (!v0.valid_for(candidates.size()) || !v1.valid_for(candidates.size())) {
    // The return line fails whatever happens next, and there is no
    // challenge ballot to hand over.
    result.disqualified = Disqualification::invalid_vote;
    return result;
  }
  auto challenge = scheme.vote(keys.public_key, beta ? v1 : v0, k, rng);
  if (!challenge) {
    throw std::logic_error("scheme rejected an in-range vote");
  }

  BulletinBoard bb = adversary.stage_board(*challenge);
  const Evidence e = scheme.partial_tally(keys.secret_key, bb, k);
  const Outcome outcome = scheme.recover(bb, e, keys.public_key);
  result.guess = adversary.stage_guess(outcome);

  if (bb.contains(*challenge)) {
    result.disqualified = Disqualification::challenge_on_board;
  }
  result.won = result.guess == beta && result.disqualified == Disqualification::none;
  result.board = std::move(bb);
  return result;
}

TrialSeeds trial_seeds(std::uint64_t run_seed, std::uint64_t trial) {
  const std::uint64_t s = derive_seed(run_seed, trial);
  return TrialSeeds{derive_seed(s, 0), derive_seed(s, 1)};
}

GameResult play_trial(const ElectionScheme& scheme, const AdversaryFactory& factory,
                      const CandidateSet& candidates, SecurityParameter k, std::uint64_t run_seed,
                      std::uint64_t trial) {
  const TrialSeeds seeds = trial_seeds(run_seed, trial);
  Rng rng(seeds.game);
  return std::visit(
      [&](const auto& make) -> GameResult {
        auto adversary = make(scheme, seeds.adversary);
        if (!adversary) {
          throw std::logic_error("adversary factory returned null");
        }
        if constexpr (std::is_same_v<std::decay_t<decltype(make)>, BallotSecrecyFactory>) {
          return play_ballot_secrecy(scheme, *adversary, candidates, k, rng);
        } else {
          return play_non_malleability(scheme, *adversary, candidates, k, rng);
        }
      },
      factory);
}

std::vector<GameResult> play_trials(const ElectionScheme& scheme, const AdversaryFactory& factory,
                                    const CandidateSet& candidates, SecurityParameter k,
                                    std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) {
    throw std::invalid_argument("at least one trial is required");
  }
  std::vector<GameResult> results(n);
  std::vector<std::exception_ptr> faults(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = play_trial(scheme, factory, candidates, k, seed, i);
      } catch (...) {
        faults[i] = std::current_exception();
      }
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!faults[i]) continue;
    try {
      std::rethrow_exception(faults[i]);
    } catch (const std::exception& e) {
      throw TrialFault(i, e.what());
    } catch (...) {
      throw TrialFault(i, "non-standard exception");
    }
  }
  return results;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) {
    return {0.0, 1.0};
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The exact interval always contains p; clamp away rounding at the ends.
  return {std::clamp(std::min(centre - half, p), 0.0, 1.0),
          std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

TrialStats summarize(const std::vector<GameResult>& results) {
  TrialStats s;
  s.trials = results.size();
  for (const auto& r : results) {
    s.wins += r.won ? 1 : 0;
    s.disqualified += r.disqualified != Disqualification::none ? 1 : 0;
  }
  s.rate = s.trials ? static_cast<double>(s.wins) / static_cast<double>(s.trials) : 0.0;
  const auto ci = wilson_interval(s.wins, s.trials);
  s.ci95_low = ci.low;
  s.ci95_high = ci.high;
  return s;
}

TrialStats run_trials(const ElectionScheme& scheme, const AdversaryFactory& factory,
                      const CandidateSet& candidates, SecurityParameter k, std::size_t n,
                      std::uint64_t seed, unsigned threads) {
  return summarize(play_trials(scheme, factory, candidates, k, n, seed, threads));
}

}  // namespace votegame
