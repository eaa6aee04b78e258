#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "csfa/monoid.hpp"
#include "csfa/sync.hpp"

namespace csfa::cli {

enum ExitCode : int {
  success = 0,             // also: synchronizing
  not_synchronizing = 1,   // proven
  input_error = 2,
  counterexample = 3,
};

struct CheckOptions {
  std::string path;
  bool timing = true;
};

struct SyncOptions {
  std::string path;
  std::string method = "auto";  // auto | bfs | greedy | thm2 | thm4
  std::size_t limit = default_subset_limit;
  bool timing = true;
};

struct MonoidOptions {
  std::string path;
  std::size_t cap = default_monoid_cap;
  bool timing = true;
};

struct VerifyOptions {
  std::vector<std::size_t> n_values;
  bool paper = false;
  std::string mode = "exhaustive";  // exhaustive | random
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
};

struct EnumerateOptions {
  std::size_t n = 2;
  std::string filter;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::string out_dir;
};

/// Reports go to `out`, diagnostics to `err`; the return value is the exit code.
int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);
int run_sync(const SyncOptions& opts, std::ostream& out, std::ostream& err);
int run_monoid(const MonoidOptions& opts, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int run_enumerate(const EnumerateOptions& opts, std::ostream& out, std::ostream& err);

/// Number of CSFA samples drawn at n = 9 by `verify --paper`.
constexpr std::uint64_t paper_random_samples = 2000;

}  // namespace csfa::cli
