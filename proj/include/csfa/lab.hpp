#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "csfa/automaton.hpp"
#include "csfa/monoid.hpp"
#include "csfa/sync.hpp"

namespace csfa {

// ---------------------------------------------------------------------------
// Canonical two-letter search space: a is i -> i+1 mod n, q0 = 0, F = {0},
// and b ranges over all n^n maps.

constexpr Letter canonical_circular = 0;
constexpr Letter canonical_free = 1;
constexpr std::size_t max_exhaustive_n = 8;

Automaton make_canonical(std::span<const State> b_row);

/// The index-th b-row in lexicographic order (row[0] most significant).
std::vector<State> b_row_at(std::size_t n, std::uint64_t index);

std::uint64_t ipow(std::uint64_t base, std::size_t exp);

struct EnumerationFilter {
  bool sfa = false;
  bool csfa = false;
  std::optional<std::size_t> cycle_length;  // of the b letter

  bool passes(const Automaton& a) const;
};

/// Accepts a comma separated list of `sfa`, `csfa`, `cycle<k>`.
EnumerationFilter parse_filter(const std::string& text);
std::string to_string(const EnumerationFilter& f);

enum class EnumerationMode { exhaustive, random };

struct EnumerationSpec {
  std::size_t n = 2;
  EnumerationFilter filter;
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t count = 0;  // random mode: number of b-rows drawn
  std::uint64_t seed = 0;
};

/// Receives each emitted automaton with its b-row and the candidate's index
/// (lexicographic rank in exhaustive mode, draw number in random mode).
using Visitor =
    std::function<void(const Automaton&, std::span<const State> b_row, std::uint64_t index)>;

/// Number of candidates examined before filtering.
std::uint64_t candidate_count(const EnumerationSpec& spec);

/// Exhaustive mode over the lexicographic index range [begin, end). Throws
/// `LimitError` when n exceeds `max_exhaustive_n`.
void enumerate_range(const EnumerationSpec& spec, std::uint64_t begin, std::uint64_t end,
                     const Visitor& visit);

void enumerate(const EnumerationSpec& spec, const Visitor& visit);
std::vector<Automaton> enumerate_all(const EnumerationSpec& spec);

/// Splits [0, total) into `parts` contiguous, ordered ranges.
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t total,
                                                                     std::size_t parts);

// ---------------------------------------------------------------------------
// Reproducible sampling

/// Uniform draw in [0, bound) by rejection. Unlike the standard
/// distributions, the result depends only on the engine's output sequence,
/// which the standard fixes for mt19937_64.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Rejection sampler of canonical circular semi-flower automata.
class CsfaSampler {
 public:
  CsfaSampler(std::size_t n, std::uint64_t seed, std::uint64_t max_attempts = 10'000'000);

  /// Throws `LimitError` when `max_attempts` consecutive draws all fail.
  Automaton next();

  std::uint64_t attempts() const noexcept { return attempts_; }
  std::uint64_t accepted() const noexcept { return accepted_; }

 private:
  std::size_t n_;
  std::mt19937_64 rng_;
  std::uint64_t max_attempts_;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
};

Automaton random_csfa(std::size_t n, std::uint64_t seed,
                      std::uint64_t max_attempts = 10'000'000);

// ---------------------------------------------------------------------------
// Fixtures

struct PaperExamples {
  Automaton a1;  // 6 states, b-cycle {q0, q3}, non-synchronizing
  Automaton a2;  // 9 states, b-cycle {q0, q3, q6}, non-synchronizing
  Automaton e1;  // 2 states, smallest circular semi-flower automaton
  Automaton e2;  // 3 states, b-cycle {q0, q1}
};

PaperExamples paper_examples();

struct FixtureCheck {
  std::string fixture;
  std::string property;
  bool confirmed = false;
};

/// Re-derives the stated properties of every fixture.
std::vector<FixtureCheck> check_fixtures(std::size_t monoid_cap = default_monoid_cap);

// ---------------------------------------------------------------------------
// Theorem sweeps

struct SweepOptions {
  std::vector<std::size_t> n_values;
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t count = 0;  // random mode: CSFA samples per n
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t remark_max_n = 5;  // units check (monoid closure) up to this n
  std::size_t monoid_cap = default_monoid_cap;
  std::size_t subset_limit = default_subset_limit;
  bool include_fixtures = false;
};

struct CycleStats {
  std::uint64_t count = 0;
  std::uint64_t synchronizing = 0;
  std::uint64_t non_synchronizing = 0;
};

/// Number of automata on which a proven statement was checked. Any failure
/// aborts the sweep, so a tally only ever counts successes.
struct Tally {
  std::uint64_t checked = 0;
};

struct NSweep {
  std::size_t n = 0;
  EnumerationMode mode = EnumerationMode::exhaustive;
  std::uint64_t generated = 0;  // b-rows examined
  std::uint64_t csfa = 0;
  std::uint64_t synchronizing = 0;
  std::uint64_t non_synchronizing = 0;
  std::map<std::size_t, CycleStats> by_cycle_length;

  Tally one_cluster;               // every letter has one cluster
  Tally fixed_point_sync;          // cycle length 1 => b^l sends Q onto {q0}
  Tally unique_permutation;        // permutation letters circular and equal
  Tally odd_two_cycle_sync;        // odd n, cycle length 2 => constructive word
  Tally units_cyclic;              // group of units = <a>, order n
  Tally decider_agreement;         // pair criterion == subset BFS (== monoid constant)
  Tally cerny_bound;               // shortest word within (n-1)^2

  std::size_t max_merge_index = 0;  // largest k used by the odd 2-cycle word
  std::size_t max_shortest_word = 0;
  std::size_t max_level = 0;

  std::uint64_t even_two_cycle_non_sync = 0;
  std::uint64_t odd_three_cycle_non_sync = 0;
  std::optional<std::vector<State>> first_even_two_cycle_non_sync;
  std::optional<std::vector<State>> first_odd_three_cycle_non_sync;

  /// Fixture names whose b-row was emitted by this sweep.
  std::vector<std::string> fixtures_enumerated;

  void merge(const NSweep& later);
};

struct SweepReport {
  std::vector<FixtureCheck> fixtures;
  std::vector<NSweep> sweeps;

  bool fixtures_confirmed() const;
};

/// Runs every structural check on each enumerated CSFA. A failed check throws
/// `TheoremViolation` carrying the automaton.
SweepReport verify_theorems(const SweepOptions& options);

/// Accumulates one candidate into `acc` (exposed for partitioned runs).
void sweep_candidate(const Automaton& a, std::span<const State> b_row,
                     const SweepOptions& options, NSweep& acc);

NSweep sweep_exhaustive(std::size_t n, const SweepOptions& options);
NSweep sweep_random(std::size_t n, const SweepOptions& options);

}  // namespace csfa
