#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "votegame/games.hpp"

namespace votegame {

enum class GameKind { ballot_secrecy, non_malleability };
enum class SchemeKind { dummy, helios, helios_hardened };
enum class AdversaryKind { null, malleability, reduction };

std::string_view to_string(GameKind g);
std::string_view to_string(SchemeKind s);
std::string_view to_string(AdversaryKind a);

GameKind parse_game(std::string_view s);
SchemeKind parse_scheme(std::string_view s);
AdversaryKind parse_adversary(std::string_view s);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  GameKind game = GameKind::non_malleability;
  SchemeKind scheme = SchemeKind::helios;
  AdversaryKind adversary = AdversaryKind::null;
  std::size_t trials = 200;
  unsigned k = 64;
  std::size_t candidates = 2;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Throws ConfigError naming the offending option.
void validate(const ExperimentConfig& config);

std::unique_ptr<ElectionScheme> make_scheme(SchemeKind kind, std::size_t candidates);

// "reduction" wraps the malleability adversary.
AdversaryFactory make_adversary(const ExperimentConfig& config);

struct ExperimentRun {
  TrialStats stats;
  std::vector<GameResult> results;
};

/// Validates, then plays every trial. TrialFault propagates.
ExperimentRun run_experiment(const ExperimentConfig& config);

/// JSON object with keys game, scheme, adversary, k, trials, wins, rate,
/// ci95_low, ci95_high, seed in that order.
std::string report_json(const ExperimentConfig& config, const TrialStats& stats);

}  // namespace votegame
