#include "votegame/adversaries.hpp"

namespace votegame {

MalleabilityAdversary::MalleabilityAdversary(const ElectionScheme& scheme, std::uint64_t seed,
                                             std::vector<Vote> known_votes, MaulChoice choice)
    : scheme_(&scheme), rng_(seed), known_votes_(std::move(known_votes)), choice_(choice) {
  if (scheme.num_candidates() < 2) {
    throw std::invalid_argument("malleability adversary needs at least two candidates");
  }
}

std::pair<Vote, Vote> MalleabilityAdversary::stage_votes(const PublicKey& pk,
                                                         SecurityParameter k) {
  pk_ = pk;
  helios_pk_ = decode_public_key(pk);
  k_ = k;
  return {v0_, v1_};
}

BulletinBoard MalleabilityAdversary::stage_board(const Ballot& challenge) {
  if (!pk_) {
    throw std::logic_error("stage_board before stage_votes");
  }
  BulletinBoard bb;
  mauled_ = maul_ballot(*helios_pk_, challenge, choice_);
  if (*mauled_ == challenge) {
    throw std::logic_error("mauled ballot equals the challenge");
  }
  bb.insert(*mauled_);

  known_.clear();
  for (const auto& v : known_votes_) {
    auto b = scheme_->vote(*pk_, v, *k_, rng_);
    if (!b) {
      throw std::invalid_argument("known vote outside candidate range");
    }
    known_.emplace_back(*b, v);
    bb.insert(std::move(*b));
  }
  return bb;
}

std::optional<bool> MalleabilityAdversary::deduce(const Outcome& outcome,
                                                  std::span<const Vote> own_votes, Vote v0,
                                                  Vote v1) {
  std::vector<std::int64_t> residual(outcome.counts.begin(), outcome.counts.end());
  for (const auto& v : own_votes) {
    if (v.candidate >= residual.size()) return std::nullopt;
    --residual[v.candidate];
  }
  std::int64_t total = 0;
  for (auto r : residual) {
    if (r < 0) return std::nullopt;
    total += r;
  }
  if (total != 1) return std::nullopt;
  if (v0.candidate < residual.size() && residual[v0.candidate] == 1) return false;
  if (v1.candidate < residual.size() && residual[v1.candidate] == 1) return true;
  return std::nullopt;
}

bool MalleabilityAdversary::stage_guess(const Outcome& outcome) {
  std::vector<Vote> own;
  own.reserve(known_.size());
  for (const auto& [ballot, v] : known_) {
    own.push_back(v);
  }
  if (auto g = deduce(outcome, own, v0_, v1_)) {
    guessed_randomly_ = false;
    return *g;
  }
  // The mauled ballot did not count: no information left.
  guessed_randomly_ = true;
  return rng_.bit();
}

ReductionAdversary::ReductionAdversary(std::unique_ptr<NonMalleabilityAdversary> inner,
                                       const ElectionScheme& scheme)
    : inner_(std::move(inner)), scheme_(&scheme) {
  if (!inner_) {
    throw std::invalid_argument("reduction needs an inner adversary");
  }
}

BulletinBoard ReductionAdversary::stage_board(const PublicKey& pk, SecurityParameter k,
                                              ChallengeOracle& oracle) {
  pk_ = pk;
  // (v0, v1) stay inside the reduction; the ballot-secrecy game never asks
  // for them.
  const auto [v0, v1] = inner_->stage_votes(pk, k);
  ++queries_;
  const auto challenge = oracle.query(v0, v1);
  if (!challenge) {
    // Out-of-range votes: the game is lost regardless of the board.
    return {};
  }
  return inner_->stage_board(*challenge);
}

bool ReductionAdversary::stage_guess(const BulletinBoard& bb, const Evidence& e) {
  if (!pk_) {
    throw std::logic_error("stage_guess before stage_board");
  }
  return inner_->stage_guess(scheme_->recover(bb, e, *pk_));
}

std::unique_ptr<BallotSecrecyAdversary> build_reduction(
    std::unique_ptr<NonMalleabilityAdversary> inner, const ElectionScheme& scheme) {
  return std::make_unique<ReductionAdversary>(std::move(inner), scheme);
}

BallotSecrecyFactory null_ballot_secrecy_factory(bool fixed_guess) {
  return [fixed_guess](const ElectionScheme&, std::uint64_t) {
    return std::make_unique<NullAdversary>(fixed_guess);
  };
}

NonMalleabilityFactory null_non_malleability_factory(bool fixed_guess) {
  return [fixed_guess](const ElectionScheme&, std::uint64_t) {
    return std::make_unique<NullAdversary>(fixed_guess);
  };
}

NonMalleabilityFactory malleability_factory(std::vector<Vote> known_votes) {
  return [known_votes = std::move(known_votes)](const ElectionScheme& scheme, std::uint64_t seed) {
    return std::make_unique<MalleabilityAdversary>(scheme, seed, known_votes);
  };
}

BallotSecrecyFactory reduction_factory(NonMalleabilityFactory inner) {
  return [inner = std::move(inner)](const ElectionScheme& scheme, std::uint64_t seed) {
    return build_reduction(inner(scheme, seed), scheme);
  };
}

}  // namespace votegame
