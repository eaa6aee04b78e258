#include "csfa/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "csfa/error.hpp"
#include "csfa/lab.hpp"
#include "csfa/report.hpp"

namespace csfa::cli {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

Automaton load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_automaton(ss.str());
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json counterexample_json(const TheoremViolation& v) {
  Json j;
  j["counterexample"]["message"] = v.what();
  j["counterexample"]["automaton"] = v.automaton_text();
  return j;
}

// Shared error funnel for the commands: maps exceptions to exit codes.
template <typename Body>
int guarded(std::ostream& out, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const TheoremViolation& v) {
    err << "error: counterexample: " << v.what() << "\n" << v.automaton_text();
    out << dump_report(counterexample_json(v));
    return counterexample;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
}

}  // namespace

int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&] {
    const auto start = Clock::now();
    const auto a = load(opts.path);
    Json j;
    j["input"] = opts.path;
    j["properties"] = properties_json(a);
    Json clusters = Json::array();
    for (Letter x = 0; x < a.letter_count(); ++x) clusters.push_back(clusters_json(a, decompose(a, x)));
    j["clusters"] = clusters;
    if (opts.timing) j["timing_ms"] = elapsed_ms(start);
    out << dump_report(j);
    return static_cast<int>(success);
  });
}

namespace {

struct Attempt {
  std::string method;
  std::string status;
  std::string detail;
};

Json attempts_json(const std::vector<Attempt>& attempts) {
  Json arr = Json::array();
  for (const auto& at : attempts) {
    Json j;
    j["method"] = at.method;
    j["status"] = at.status;
    j["detail"] = at.detail;
    arr.push_back(j);
  }
  return arr;
}

SyncResult negative_result(const Automaton& a, SyncMethod method) {
  SyncResult r;
  r.synchronizing = false;
  r.method = method;
  r.cerny_bound = cerny_bound(a.state_count());
  return r;
}

// Auto dispatch: pair criterion first, then the constructive words when their
// preconditions hold, then subset search within the limit, then greedy.
SyncResult sync_auto(const Automaton& a, std::size_t limit, std::vector<Attempt>& attempts) {
  if (!is_synchronizing_pairs(a)) {
    attempts.push_back({"pair-criterion", "decided", "some pair of states cannot be merged"});
    return negative_result(a, SyncMethod::pair_criterion);
  }
  attempts.push_back({"pair-criterion", "decided", "every pair of states can be merged"});
  try {
    auto r = make_sync_result(a, SyncMethod::thm2_construction, thm2_word(a));
    attempts.push_back({"thm2", "ok", ""});
    return r;
  } catch (const PreconditionError& e) {
    attempts.push_back({"thm2", "skipped", e.what()});
  }
  try {
    auto r = make_sync_result(a, SyncMethod::thm4_construction, thm4_word(a));
    attempts.push_back({"thm4", "ok", ""});
    return r;
  } catch (const PreconditionError& e) {
    attempts.push_back({"thm4", "skipped", e.what()});
  }
  try {
    if (auto w = shortest_sync_word(a, limit)) {
      attempts.push_back({"bfs", "ok", ""});
      return make_sync_result(a, SyncMethod::subset_bfs, std::move(*w));
    }
    throw TheoremViolation("subset search found no word although all pairs merge",
                           serialize_automaton(a));
  } catch (const LimitError& e) {
    attempts.push_back({"bfs", "skipped", e.what()});
  }
  auto w = greedy_sync_word(a);
  attempts.push_back({"greedy", "ok", ""});
  return make_sync_result(a, SyncMethod::pair_greedy, std::move(*w));
}

}  // namespace

int run_sync(const SyncOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&] {
    const auto start = Clock::now();
    const auto a = load(opts.path);
    std::vector<Attempt> attempts;
    SyncResult r;
    if (opts.method == "auto") {
      r = sync_auto(a, opts.limit, attempts);
    } else if (opts.method == "bfs") {
      auto w = shortest_sync_word(a, opts.limit);
      r = w ? make_sync_result(a, SyncMethod::subset_bfs, std::move(*w))
            : negative_result(a, SyncMethod::subset_bfs);
    } else if (opts.method == "greedy") {
      auto w = greedy_sync_word(a);
      r = w ? make_sync_result(a, SyncMethod::pair_greedy, std::move(*w))
            : negative_result(a, SyncMethod::pair_greedy);
    } else if (opts.method == "thm2") {
      r = make_sync_result(a, SyncMethod::thm2_construction, thm2_word(a));
    } else if (opts.method == "thm4") {
      r = make_sync_result(a, SyncMethod::thm4_construction, thm4_word(a));
    } else {
      throw PreconditionError("unknown method '" + opts.method + "'");
    }
    Json j;
    j["input"] = opts.path;
    j["synchronization"] = sync_json(a, r);
    if (opts.method == "auto") j["synchronization"]["attempts"] = attempts_json(attempts);
    if (opts.timing) j["timing_ms"] = elapsed_ms(start);
    out << dump_report(j);
    return static_cast<int>(r.synchronizing ? success : not_synchronizing);
  });
}

int run_monoid(const MonoidOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&] {
    const auto start = Clock::now();
    const auto a = load(opts.path);
    auto m = transition_monoid(a, opts.cap);
    Json j;
    j["input"] = opts.path;
    j["monoid"] = monoid_json(a, m);
    if (opts.timing) j["timing_ms"] = elapsed_ms(start);
    out << dump_report(j);
    if (m.truncated()) err << "note: closure truncated at " << opts.cap << " elements\n";
    return static_cast<int>(success);
  });
}

namespace {

std::string summary_line(const FixtureCheck& c) {
  return c.fixture + " " + c.property + ": " + (c.confirmed ? "confirmed" : "FAILED");
}

}  // namespace

int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&] {
    const auto start = Clock::now();
    SweepOptions sweep;
    sweep.seed = opts.seed;
    sweep.count = opts.count;
    sweep.threads = std::max<std::size_t>(opts.threads, 1);

    SweepReport report;
    if (opts.paper) {
      report.fixtures = check_fixtures(sweep.monoid_cap);
      for (std::size_t n : {2, 3, 4, 5, 6, 7}) report.sweeps.push_back(sweep_exhaustive(n, sweep));
      sweep.count = paper_random_samples;
      report.sweeps.push_back(sweep_random(9, sweep));
    } else {
      if (opts.n_values.empty()) throw PreconditionError("verify needs --n or --paper");
      if (opts.mode == "exhaustive") {
        sweep.mode = EnumerationMode::exhaustive;
      } else if (opts.mode == "random") {
        sweep.mode = EnumerationMode::random;
      } else {
        throw PreconditionError("unknown mode '" + opts.mode + "'");
      }
      sweep.n_values = opts.n_values;
      for (std::size_t n : opts.n_values) {
        if (n < 2) throw PreconditionError("state count must be greater than 1");
      }
      report = verify_theorems(sweep);
    }

    Json j;
    j["mode"] = opts.paper ? "paper" : opts.mode;
    Json summary = Json::array();
    for (const auto& c : report.fixtures) summary.push_back(summary_line(c));
    j["summary"] = summary;
    auto body = sweep_report_json(report);
    for (auto& [k, v] : body.items()) j[k] = v;
    const bool ok = report.fixtures_confirmed();
    j["verdict"] = ok ? "all checks hold" : "fixture check failed";
    out << dump_report(j);
    err << "verify finished in " << static_cast<long long>(elapsed_ms(start)) << " ms\n";
    return static_cast<int>(ok ? success : counterexample);
  });
}

int run_enumerate(const EnumerateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(out, err, [&] {
    EnumerationSpec spec;
    spec.n = opts.n;
    spec.filter = parse_filter(opts.filter);
    spec.seed = opts.seed;
    spec.count = opts.count;
    if (opts.mode == "exhaustive") {
      spec.mode = EnumerationMode::exhaustive;
    } else if (opts.mode == "random") {
      spec.mode = EnumerationMode::random;
    } else {
      throw PreconditionError("unknown mode '" + opts.mode + "'");
    }
    if (opts.out_dir.empty()) throw PreconditionError("--out is required");

    const fs::path dir(opts.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
      throw Error("output directory '" + opts.out_dir + "' is not writable");
    }

    Json files = Json::array();
    enumerate(spec, [&](const Automaton& a, std::span<const State> row, std::uint64_t) {
      std::string name = "n" + std::to_string(a.state_count()) + "-b";
      for (std::size_t i = 0; i < row.size(); ++i) name += (i ? "-" : "") + std::to_string(row[i]);
      name += ".aut";
      std::ofstream f(dir / name, std::ios::binary);
      f << serialize_automaton(a);
      if (!f) throw Error("cannot write '" + (dir / name).string() + "'");
      files.push_back(name);
    });

    Json j;
    j["n"] = spec.n;
    j["filter"] = to_string(spec.filter);
    j["mode"] = opts.mode;
    j["seed"] = spec.seed;
    j["candidates"] = candidate_count(spec);
    j["emitted"] = files.size();
    j["files"] = files;
    std::ofstream summary(dir / "summary.json", std::ios::binary);
    summary << dump_report(j);
    if (!summary) throw Error("cannot write summary.json");
    out << dump_report(j);
    return static_cast<int>(success);
  });
}

}  // namespace csfa::cli
