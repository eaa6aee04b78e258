#include <iostream>

#include "CLI11.hpp"

#include "csfa/commands.hpp"

int main(int argc, char** argv) {
  using namespace csfa::cli;

  CLI::App app{"Synchronization analysis of circular semi-flower automata"};
  app.require_subcommand(1);
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Omit timing_ms from reports");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Structural properties and letter clusters");
  check_cmd->add_option("path", check.path, "Automaton file")->required();

  SyncOptions sync;
  auto* sync_cmd = app.add_subcommand("sync", "Decide synchronization and find a word");
  sync_cmd->add_option("path", sync.path, "Automaton file")->required();
  sync_cmd->add_option("--method", sync.method, "auto|bfs|greedy|thm2|thm4")
      ->check(CLI::IsMember({"auto", "bfs", "greedy", "thm2", "thm4"}));
  sync_cmd->add_option("--limit", sync.limit, "Largest state count for subset search");

  MonoidOptions monoid;
  auto* monoid_cmd = app.add_subcommand("monoid", "Transition monoid closure and units");
  monoid_cmd->add_option("path", monoid.path, "Automaton file")->required();
  monoid_cmd->add_option("--cap", monoid.cap, "Element cap")->check(CLI::PositiveNumber);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Sweep the structural statements");
  verify_cmd->add_option("--n", verify.n_values, "State counts")->delimiter(',');
  verify_cmd->add_flag("--paper", verify.paper, "Fixture checks plus the standard sweeps");
  verify_cmd->add_option("--mode", verify.mode, "exhaustive|random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  verify_cmd->add_option("--count", verify.count, "Random mode: samples per n");
  verify_cmd->add_option("--seed", verify.seed, "Random mode seed");
  verify_cmd->add_option("--threads", verify.threads, "Exhaustive mode workers");

  EnumerateOptions enumerate;
  auto* enum_cmd = app.add_subcommand("enumerate", "Write canonical two-letter automata");
  enum_cmd->add_option("--n", enumerate.n, "State count")->required();
  enum_cmd->add_option("--filter", enumerate.filter, "Comma list of sfa, csfa, cycle<k>");
  enum_cmd->add_option("--mode", enumerate.mode, "exhaustive|random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  enum_cmd->add_option("--seed", enumerate.seed, "Random mode seed");
  enum_cmd->add_option("--count", enumerate.count, "Random mode: b-rows drawn");
  enum_cmd->add_option("--out", enumerate.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? success : input_error;
  }

  check.timing = sync.timing = monoid.timing = !no_timing;
  if (*check_cmd) return run_check(check, std::cout, std::cerr);
  if (*sync_cmd) return run_sync(sync, std::cout, std::cerr);
  if (*monoid_cmd) return run_monoid(monoid, std::cout, std::cerr);
  if (*verify_cmd) return run_verify(verify, std::cout, std::cerr);
  return run_enumerate(enumerate, std::cout, std::cerr);
}
