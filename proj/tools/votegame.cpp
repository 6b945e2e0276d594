#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "votegame/board_io.hpp"
#include "votegame/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitFault = 2;

int run(const votegame::ExperimentConfig& config, const std::string& out_path,
        const std::string& board_out) {
  votegame::ExperimentRun run;
  try {
    run = votegame::run_experiment(config);
  } catch (const votegame::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const votegame::TrialFault& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitFault;
  }

  const std::string report = votegame::report_json(config, run.stats);
  std::cout << report;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    out << report;
    if (!out) {
      std::cerr << "cannot write report to " << out_path << "\n";
      return kExitConfig;
    }
  }
  if (!board_out.empty()) {
    votegame::export_board(board_out, run.results.front().board);
  }
  std::cerr << run.stats.wins << "/" << run.stats.trials << " won, " << run.stats.disqualified
            << " disqualified\n";
  return kExitOk;
}

int show_board(const std::string& path) {
  try {
    const auto bb = votegame::import_board(path);
    std::cout << bb.size() << " ballot(s)\n";
    for (const auto& b : bb) {
      std::cout << b.scheme_tag << " " << b.payload.size() << " bytes\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ballot secrecy and non-malleability game harness"};
  app.require_subcommand(0, 1);

  std::string game = "non-malleability";
  std::string scheme = "helios";
  std::string adversary = "null";
  votegame::ExperimentConfig config;
  std::string out_path;
  std::string board_out;

  app.add_option("--game", game, "ballot-secrecy | non-malleability")->capture_default_str();
  app.add_option("--scheme", scheme, "dummy | helios | helios-hardened")->capture_default_str();
  app.add_option("--adversary", adversary, "null | malleability | reduction")
      ->capture_default_str();
  app.add_option("--trials", config.trials, "number of independent games")->capture_default_str();
  app.add_option("--k", config.k, "modulus bit length")->capture_default_str();
  app.add_option("--candidates", config.candidates, "number of candidates")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "64-bit run seed")->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads")->capture_default_str();
  app.add_option("--out", out_path, "write the JSON report here");
  app.add_option("--board-out", board_out, "export the first trial's bulletin board here");

  std::string board_path;
  auto* board_cmd = app.add_subcommand("board", "load a bulletin-board file and list its ballots");
  board_cmd->add_option("file", board_path, "board file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (board_cmd->parsed()) {
    return show_board(board_path);
  }

  try {
    config.game = votegame::parse_game(game);
    config.scheme = votegame::parse_scheme(scheme);
    config.adversary = votegame::parse_adversary(adversary);
  } catch (const votegame::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(config, out_path, board_out);
}
