#include "votegame/experiment.hpp"

#include <json.hpp>

#include "votegame/adversaries.hpp"
#include "votegame/dummy_scheme.hpp"
#include "votegame/helios.hpp"

namespace votegame {

std::string_view to_string(GameKind g) {
  return g == GameKind::ballot_secrecy ? "ballot-secrecy" : "non-malleability";
}

std::string_view to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::dummy:
      return "dummy";
    case SchemeKind::helios:
      return "helios";
    case SchemeKind::helios_hardened:
      return "helios-hardened";
  }
  return "unknown";
}

std::string_view to_string(AdversaryKind a) {
  switch (a) {
    case AdversaryKind::null:
      return "null";
    case AdversaryKind::malleability:
      return "malleability";
    case AdversaryKind::reduction:
      return "reduction";
  }
  return "unknown";
}

GameKind parse_game(std::string_view s) {
  if (s == "ballot-secrecy") return GameKind::ballot_secrecy;
  if (s == "non-malleability") return GameKind::non_malleability;
  throw ConfigError("unknown game '" + std::string(s) +
                    "' (expected ballot-secrecy or non-malleability)");
}

SchemeKind parse_scheme(std::string_view s) {
  if (s == "dummy") return SchemeKind::dummy;
  if (s == "helios") return SchemeKind::helios;
  if (s == "helios-hardened") return SchemeKind::helios_hardened;
  throw ConfigError("unknown scheme '" + std::string(s) +
                    "' (expected dummy, helios or helios-hardened)");
}

AdversaryKind parse_adversary(std::string_view s) {
  if (s == "null") return AdversaryKind::null;
  if (s == "malleability") return AdversaryKind::malleability;
  if (s == "reduction") return AdversaryKind::reduction;
  throw ConfigError("unknown adversary '" + std::string(s) +
                    "' (expected null, malleability or reduction)");
}

void validate(const ExperimentConfig& c) {
  if (c.trials < 1) {
    throw ConfigError("--trials must be at least 1");
  }
  if (c.k < SecurityParameter::kMin || c.k > SecurityParameter::kMax) {
    throw ConfigError("--k must lie in [" + std::to_string(SecurityParameter::kMin) + ", " +
                      std::to_string(SecurityParameter::kMax) + "]");
  }
  if (c.candidates < 2) {
    throw ConfigError("--candidates must be at least 2");
  }
  if (c.adversary == AdversaryKind::reduction && c.game != GameKind::ballot_secrecy) {
    throw ConfigError("the reduction adversary plays ballot-secrecy; use --game ballot-secrecy");
  }
  if (c.adversary == AdversaryKind::malleability && c.game != GameKind::non_malleability) {
    throw ConfigError(
        "the malleability adversary plays non-malleability; for ballot-secrecy use "
        "--adversary reduction");
  }
  if (c.adversary != AdversaryKind::null && c.scheme == SchemeKind::dummy) {
    throw ConfigError("the " + std::string(to_string(c.adversary)) +
                      " adversary mauls helios ballots; use --scheme helios or helios-hardened");
  }
  if (c.threads < 1) {
    throw ConfigError("--threads must be at least 1");
  }
}

std::unique_ptr<ElectionScheme> make_scheme(SchemeKind kind, std::size_t candidates) {
  switch (kind) {
    case SchemeKind::dummy:
      return std::make_unique<DummyScheme>(candidates);
    case SchemeKind::helios:
      return std::make_unique<HeliosScheme>(candidates, Verification::lenient);
    case SchemeKind::helios_hardened:
      return std::make_unique<HeliosScheme>(candidates, Verification::strict);
  }
  throw ConfigError("unknown scheme");
}

AdversaryFactory make_adversary(const ExperimentConfig& c) {
  switch (c.adversary) {
    case AdversaryKind::null:
      if (c.game == GameKind::ballot_secrecy) return null_ballot_secrecy_factory();
      return null_non_malleability_factory();
    case AdversaryKind::malleability:
      return malleability_factory();
    case AdversaryKind::reduction:
      return reduction_factory(malleability_factory());
  }
  throw ConfigError("unknown adversary");
}

ExperimentRun run_experiment(const ExperimentConfig& c) {
  validate(c);
  const auto scheme = make_scheme(c.scheme, c.candidates);
  const auto candidates = CandidateSet::numbered(c.candidates);
  ExperimentRun run;
  run.results = play_trials(*scheme, make_adversary(c), candidates, SecurityParameter(c.k),
                            c.trials, c.seed, c.threads);
  run.stats = summarize(run.results);
  return run;
}

std::string report_json(const ExperimentConfig& c, const TrialStats& s) {
  nlohmann::ordered_json j;
  j["game"] = to_string(c.game);
  j["scheme"] = to_string(c.scheme);
  j["adversary"] = to_string(c.adversary);
  j["k"] = c.k;
  j["trials"] = s.trials;
  j["wins"] = s.wins;
  j["rate"] = s.rate;
  j["ci95_low"] = s.ci95_low;
  j["ci95_high"] = s.ci95_high;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

}  // namespace votegame
