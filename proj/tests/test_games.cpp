#include <gtest/gtest.h>

#include <functional>
#include <unordered_set>

#include "oracles.hpp"
#include "votegame/adversaries.hpp"
#include "votegame/dummy_scheme.hpp"
#include "votegame/helios.hpp"

namespace votegame {
namespace {

const SecurityParameter k16{16};
const SecurityParameter k32{32};
const CandidateSet kParties({"Labour", "Conservative"});

// Ballot-secrecy adversary assembled from callbacks.
class ScriptedBs final : public BallotSecrecyAdversary {
 public:
  using Board = std::function<BulletinBoard(const PublicKey&, ChallengeOracle&)>;
  using Guess = std::function<bool(const BulletinBoard&, const Evidence&)>;

  ScriptedBs(Board board, Guess guess) : board_(std::move(board)), guess_(std::move(guess)) {}

  BulletinBoard stage_board(const PublicKey& pk, SecurityParameter,
                            ChallengeOracle& oracle) override {
    return board_(pk, oracle);
  }
  bool stage_guess(const BulletinBoard& bb, const Evidence& e) override { return guess_(bb, e); }

 private:
  Board board_;
  Guess guess_;
};

class ScriptedNm final : public NonMalleabilityAdversary {
 public:
  ScriptedNm(std::pair<Vote, Vote> votes, std::function<BulletinBoard(const Ballot&)> board)
      : votes_(votes), board_(std::move(board)) {}

  std::pair<Vote, Vote> stage_votes(const PublicKey&, SecurityParameter) override {
    return votes_;
  }
  BulletinBoard stage_board(const Ballot& challenge) override { return board_(challenge); }
  bool stage_guess(const Outcome&) override { return true; }

 private:
  std::pair<Vote, Vote> votes_;
  std::function<BulletinBoard(const Ballot&)> board_;
};

OracleState fresh_state(const ElectionScheme& scheme, bool beta, Rng& rng) {
  return OracleState{{}, beta, scheme.setup(k16, rng).public_key, k16};
}

TEST(ChallengeOracle, ReturnsBallotForTheSelectedSide) {
  const DummyScheme scheme(2);
  Rng rng(1);
  for (bool beta : {false, true}) {
    auto state = fresh_state(scheme, beta, rng);
    const auto b = oracle_query(state, Vote{0}, Vote{1}, scheme, kParties, rng);
    ASSERT_TRUE(b.has_value());
    const auto v = scheme.read_vote(*b);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(kParties.name(v->candidate), beta ? "Conservative" : "Labour");
  }
}

TEST(ChallengeOracle, RecordsOneTriplePerQuery) {
  const DummyScheme scheme(2);
  Rng rng(2);
  auto state = fresh_state(scheme, false, rng);
  for (std::size_t i = 1; i <= 5; ++i) {
    const auto b = oracle_query(state, Vote{i % 2}, Vote{0}, scheme, kParties, rng);
    EXPECT_EQ(state.challenges.size(), i);
    EXPECT_EQ(state.queries, i);
    EXPECT_EQ(state.challenges.count(ChallengeTriple{*b, Vote{i % 2}, Vote{0}}), 1u);
  }
  EXPECT_FALSE(state.invalid_vote);
}

TEST(ChallengeOracle, OutOfRangeVoteOnEitherSideIsRefused) {
  const DummyScheme scheme(2);
  Rng rng(3);
  for (bool beta : {false, true}) {
    for (auto [v0, v1] : {std::pair{0u, 2u}, std::pair{2u, 0u}}) {
      auto state = fresh_state(scheme, beta, rng);
      EXPECT_FALSE(oracle_query(state, Vote{v0}, Vote{v1}, scheme, kParties, rng).has_value());
      EXPECT_TRUE(state.invalid_vote);
      EXPECT_TRUE(state.challenges.empty());
    }
  }
}

TEST(ChallengeOracle, HeliosBallotDecryptsToSelectedVote) {
  const HeliosScheme scheme(3, Verification::lenient);
  const auto v = CandidateSet::numbered(3);
  Rng rng(4);
  const auto keys = scheme.setup(k32, rng);
  const auto sk = decode_secret_key(keys.secret_key);
  for (int i = 0; i < 30; ++i) {
    const bool beta = rng.bit();
    OracleState state{{}, beta, keys.public_key, k32};
    const Vote v0{rng.below(std::uint64_t{3})};
    const Vote v1{rng.below(std::uint64_t{3})};
    const auto b = oracle_query(state, v0, v1, scheme, v, rng);
    const auto plain = decrypt_helios_ballot(sk, decode_helios_ballot(*b));
    std::vector<std::uint64_t> expected(3, 0);
    expected[(beta ? v1 : v0).candidate] = 1;
    EXPECT_EQ(plain, expected);
  }
}

Ballot id(int i) { return Ballot{"x", {static_cast<std::uint8_t>(i)}}; }

TEST(Balanced, WorkedExamples) {
  const auto v = CandidateSet::numbered(2);
  EXPECT_TRUE(balanced({}, v, {}));
  EXPECT_TRUE(balanced({id(1)}, v, {}));
  EXPECT_FALSE(balanced({id(1)}, v, {{id(1), Vote{0}, Vote{1}}}));
  EXPECT_TRUE(balanced({id(1)}, v, {{id(1), Vote{1}, Vote{1}}}));
  EXPECT_TRUE(balanced({id(1), id(2)}, v, {{id(1), Vote{0}, Vote{1}}, {id(2), Vote{1}, Vote{0}}}));
  // Challenge ballots left off the board do not count.
  EXPECT_TRUE(balanced({id(2)}, v, {{id(1), Vote{0}, Vote{1}}}));
  EXPECT_FALSE(balanced({id(1), id(2)}, v,
                        {{id(1), Vote{0}, Vote{1}}, {id(2), Vote{0}, Vote{1}}}));
}

// Every board of at most four ballots over m in {2, 3}, each ballot carrying
// no triple or one triple, plus one off-board challenge ballot.
TEST(Balanced, AgreesWithLiteralPredicateExhaustively) {
  std::size_t cases = 0;
  for (std::size_t m : {2u, 3u}) {
    const auto v = CandidateSet::numbered(m);
    const std::size_t labels = 1 + m * m;
    for (int size = 0; size <= 4; ++size) {
      std::size_t combos = 1;
      for (int i = 0; i <= size; ++i) combos *= labels;
      for (std::size_t code = 0; code < combos; ++code) {
        std::size_t c = code;
        BulletinBoard bb;
        std::set<int> board_ids;
        ChallengeSet L;
        std::vector<oracle::Triple> literal;
        for (int ballot = 0; ballot <= size; ++ballot) {
          const std::size_t label = c % labels;
          c /= labels;
          // The last ballot stays off the board.
          if (ballot < size) {
            bb.insert(id(ballot));
            board_ids.insert(ballot);
          }
          if (label == 0) continue;
          const std::size_t l = (label - 1) / m;
          const std::size_t r = (label - 1) % m;
          L.insert({id(ballot), Vote{l}, Vote{r}});
          literal.push_back({ballot, l, r});
        }
        ASSERT_EQ(balanced(bb, v, L), oracle::balanced(board_ids, m, literal)) << m << " " << code;
        ++cases;
      }
    }
  }
  EXPECT_GT(cases, 10000u);
}

TEST(Balanced, AgreesWithLiteralPredicateOnMultiTripleBallots) {
  const std::size_t m = 2;
  const auto v = CandidateSet::numbered(m);
  // Two ballots, each tagged with any subset of the four (left, right) pairs.
  for (unsigned mask = 0; mask < 256; ++mask) {
    for (unsigned on_board = 0; on_board < 4; ++on_board) {
      BulletinBoard bb;
      std::set<int> ids;
      ChallengeSet L;
      std::vector<oracle::Triple> literal;
      for (int b = 0; b < 2; ++b) {
        if (on_board & (1u << b)) {
          bb.insert(id(b));
          ids.insert(b);
        }
        for (unsigned pair = 0; pair < 4; ++pair) {
          if (!(mask & (1u << (4 * b + pair)))) continue;
          L.insert({id(b), Vote{pair / 2}, Vote{pair % 2}});
          literal.push_back({b, pair / 2, pair % 2});
        }
      }
      ASSERT_EQ(balanced(bb, v, L), oracle::balanced(ids, m, literal)) << mask << " " << on_board;
    }
  }
}

TEST(BallotSecrecyGame, NullAdversaryWinsHalfTheTime) {
  const DummyScheme scheme(2);
  for (bool guess : {true, false}) {
    const auto stats = run_trials(scheme, null_ballot_secrecy_factory(guess), kParties, k16, 1000, 7);
    EXPECT_GE(stats.rate, 0.45) << guess;
    EXPECT_LE(stats.rate, 0.55) << guess;
    EXPECT_EQ(stats.disqualified, 0u);
  }
}

TEST(BallotSecrecyGame, UnbalancedBoardLosesDespiteCorrectGuess) {
  const DummyScheme scheme(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::optional<Ballot> challenge;
    ScriptedBs adversary(
        [&](const PublicKey&, ChallengeOracle& oracle) {
          challenge = oracle.query(Vote{0}, Vote{1});
          return BulletinBoard{*challenge};
        },
        [&](const BulletinBoard&, const Evidence&) {
          return scheme.read_vote(*challenge)->candidate == 1;
        });
    Rng rng(seed);
    const auto r = play_ballot_secrecy(scheme, adversary, kParties, k16, rng);
    EXPECT_EQ(r.guess, r.beta);
    EXPECT_EQ(r.disqualified, Disqualification::unbalanced);
    EXPECT_FALSE(r.won);
  }
}

// Plaintext ballots leak beta on a balanced board: the baseline scheme has
// no ballot secrecy, and the game must say so.
TEST(BallotSecrecyGame, BalancedPlaintextAttackWinsEveryTrial) {
  const DummyScheme scheme(2);
  BallotSecrecyFactory factory = [](const ElectionScheme& s, std::uint64_t) {
    auto challenge = std::make_shared<Ballot>();
    const auto& dummy = dynamic_cast<const DummyScheme&>(s);
    return std::make_unique<ScriptedBs>(
        [challenge](const PublicKey&, ChallengeOracle& oracle) {
          *challenge = *oracle.query(Vote{0}, Vote{1});
          return BulletinBoard{*challenge, *oracle.query(Vote{1}, Vote{0})};
        },
        [challenge, &dummy](const BulletinBoard&, const Evidence&) {
          return dummy.read_vote(*challenge)->candidate == 1;
        });
  };
  const auto stats = run_trials(scheme, factory, kParties, k16, 200, 3);
  EXPECT_EQ(stats.wins, 200u);
  EXPECT_EQ(stats.rate, 1.0);
  EXPECT_EQ(stats.disqualified, 0u);
}

TEST(BallotSecrecyGame, EmptyBoardWinsExactlyWhenGuessMatches) {
  const DummyScheme scheme(2);
  const auto results = play_trials(scheme, null_ballot_secrecy_factory(true), kParties, k16, 200, 5);
  for (const auto& r : results) {
    EXPECT_EQ(r.won, r.beta);
    EXPECT_TRUE(r.board.empty());
  }
}

TEST(BallotSecrecyGame, InvalidOracleVoteDisqualifies) {
  const DummyScheme scheme(2);
  for (bool beta_guess : {false, true}) {
    ScriptedBs adversary(
        [](const PublicKey&, ChallengeOracle& oracle) {
          EXPECT_FALSE(oracle.query(Vote{5}, Vote{0}).has_value());
          return BulletinBoard{};
        },
        [&](const BulletinBoard&, const Evidence&) { return beta_guess; });
    Rng rng(11);
    const auto r = play_ballot_secrecy(scheme, adversary, kParties, k16, rng);
    EXPECT_EQ(r.disqualified, Disqualification::invalid_vote);
    EXPECT_FALSE(r.won);
  }
}

TEST(BallotSecrecyGame, OracleClosesAfterBoardStage) {
  const DummyScheme scheme(2);
  BallotSecrecyFactory factory = [](const ElectionScheme&, std::uint64_t) {
    auto saved = std::make_shared<ChallengeOracle*>(nullptr);
    return std::make_unique<ScriptedBs>(
        [saved](const PublicKey&, ChallengeOracle& oracle) {
          *saved = &oracle;
          return BulletinBoard{};
        },
        [saved](const BulletinBoard&, const Evidence&) {
          (*saved)->query(Vote{0}, Vote{1});
          return true;
        });
  };
  try {
    play_trials(scheme, factory, kParties, k16, 4, 1);
    FAIL() << "expected a trial fault";
  } catch (const TrialFault& f) {
    EXPECT_EQ(f.trial(), 0u);
    EXPECT_NE(std::string(f.what()).find("oracle"), std::string::npos);
  }
}

TEST(Games, SchemeArityMustMatchCandidates) {
  const DummyScheme scheme(3);
  NullAdversary adversary;
  Rng rng(1);
  EXPECT_THROW(play_ballot_secrecy(scheme, adversary, kParties, k16, rng), std::invalid_argument);
  EXPECT_THROW(play_non_malleability(scheme, adversary, kParties, k16, rng),
               std::invalid_argument);
}

TEST(NonMalleabilityGame, NullAdversaryWinsHalfTheTime) {
  const HeliosScheme scheme(2, Verification::lenient);
  for (bool guess : {true, false}) {
    const auto stats =
        run_trials(scheme, null_non_malleability_factory(guess), kParties, k32, 1000, 8);
    EXPECT_GE(stats.rate, 0.45);
    EXPECT_LE(stats.rate, 0.55);
  }
}

TEST(NonMalleabilityGame, ChallengeOnBoardDisqualifies) {
  const HeliosScheme scheme(2, Verification::lenient);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    ScriptedNm adversary({Vote{0}, Vote{1}}, [](const Ballot& b) { return BulletinBoard{b}; });
    Rng rng(seed);
    const auto r = play_non_malleability(scheme, adversary, kParties, k32, rng);
    EXPECT_EQ(r.disqualified, Disqualification::challenge_on_board);
    EXPECT_FALSE(r.won);
  }
}

TEST(NonMalleabilityGame, InvalidVotesDisqualify) {
  const HeliosScheme scheme(2, Verification::lenient);
  bool board_called = false;
  ScriptedNm adversary({Vote{0}, Vote{2}}, [&](const Ballot&) {
    board_called = true;
    return BulletinBoard{};
  });
  Rng rng(1);
  const auto r = play_non_malleability(scheme, adversary, kParties, k32, rng);
  EXPECT_EQ(r.disqualified, Disqualification::invalid_vote);
  EXPECT_FALSE(r.won);
  EXPECT_FALSE(board_called);
}

// A disqualified trial never counts as a win, whatever the guess.
TEST(Games, DisqualificationDominatesGuess) {
  const HeliosScheme scheme(2, Verification::lenient);
  NonMalleabilityFactory copier = [](const ElectionScheme&, std::uint64_t) {
    return std::make_unique<ScriptedNm>(std::pair{Vote{0}, Vote{1}},
                                        [](const Ballot& b) { return BulletinBoard{b}; });
  };
  for (const auto& r : play_trials(scheme, copier, kParties, k32, 100, 2)) {
    EXPECT_NE(r.disqualified, Disqualification::none);
    EXPECT_FALSE(r.won);
  }
}

TEST(Trials, DeterministicAndThreadIndependent) {
  const HeliosScheme scheme(2, Verification::lenient);
  const auto a = run_trials(scheme, malleability_factory(), kParties, k32, 50, 99);
  const auto b = run_trials(scheme, malleability_factory(), kParties, k32, 50, 99);
  const auto c = run_trials(scheme, malleability_factory(), kParties, k32, 50, 99, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);

  const DummyScheme dummy(2);
  const auto r1 = play_trials(dummy, null_ballot_secrecy_factory(), kParties, k16, 100, 4);
  const auto r2 = play_trials(dummy, null_ballot_secrecy_factory(), kParties, k16, 100, 4, 4);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].beta, r2[i].beta);
    EXPECT_EQ(r1[i].won, r2[i].won);
  }
}

TEST(Trials, ZeroTrialsRejected) {
  const DummyScheme scheme(2);
  EXPECT_THROW(play_trials(scheme, null_ballot_secrecy_factory(), kParties, k16, 0, 1),
               std::invalid_argument);
}

TEST(Trials, FaultReportsLowestTrial) {
  const DummyScheme scheme(2);
  BallotSecrecyFactory factory = [](const ElectionScheme&, std::uint64_t seed) {
    return std::make_unique<ScriptedBs>(
        [seed](const PublicKey&, ChallengeOracle&) -> BulletinBoard {
          if (seed % 3 == 0) throw std::runtime_error("boom");
          return {};
        },
        [](const BulletinBoard&, const Evidence&) { return true; });
  };
  std::size_t expected = 0;
  while (trial_seeds(6, expected).adversary % 3 != 0) ++expected;
  for (unsigned threads : {1u, 3u}) {
    try {
      play_trials(scheme, factory, kParties, k16, expected + 20, 6, threads);
      FAIL();
    } catch (const TrialFault& f) {
      EXPECT_EQ(f.trial(), expected);
    }
  }
}

TEST(Trials, StreamsAreDistinct) {
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t run : {0u, 1u}) {
    for (std::uint64_t i = 0; i < 10000; ++i) {
      const auto s = trial_seeds(run, i);
      EXPECT_TRUE(seen.insert(s.game).second);
      EXPECT_TRUE(seen.insert(s.adversary).second);
    }
  }
}

TEST(Wilson, ReferenceValues) {
  // Closed-form values computed independently.
  const auto a = wilson_interval(50, 100);
  EXPECT_NEAR(a.low, 0.4038315303659956, 1e-12);
  EXPECT_NEAR(a.high, 0.5961684696340044, 1e-12);
  const auto b = wilson_interval(0, 10);
  EXPECT_EQ(b.low, 0.0);
  EXPECT_NEAR(b.high, 0.2775327998628892, 1e-12);
  const auto c = wilson_interval(10, 10);
  EXPECT_NEAR(c.low, 0.7224672001371107, 1e-12);
  EXPECT_EQ(c.high, 1.0);
  const auto d = wilson_interval(481, 1000);
  EXPECT_NEAR(d.low, 0.4501645630755934, 1e-12);
  EXPECT_NEAR(d.high, 0.5119808537468576, 1e-12);
}

TEST(Wilson, ContainsTheRate) {
  for (std::size_t n : {1u, 2u, 7u, 100u, 1000u}) {
    for (std::size_t s = 0; s <= n; ++s) {
      const auto ci = wilson_interval(s, n);
      const double p = static_cast<double>(s) / static_cast<double>(n);
      EXPECT_LE(ci.low, p);
      EXPECT_GE(ci.high, p);
      EXPECT_GE(ci.low, 0.0);
      EXPECT_LE(ci.high, 1.0);
    }
  }
}

// The [0.45, 0.55] acceptance band for a fair coin over 1000 trials has a
// false-failure probability well under 1%.
TEST(Wilson, AcceptanceBandIsWideEnough) {
  EXPECT_LT(oracle::fair_coin_two_sided_tail(1000, 450, 550), 0.01);
}

}  // namespace
}  // namespace votegame
