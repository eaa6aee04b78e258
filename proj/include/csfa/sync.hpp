#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "csfa/automaton.hpp"

namespace csfa {

enum class SyncMethod {
  subset_bfs,
  pair_greedy,
  thm2_construction,  // b^l for a letter whose cycle is a fixed point
  thm4_construction,  // odd n, circular, letter with a 2-cycle
  pair_criterion,     // verdict only, no word
};

std::string_view to_string(SyncMethod m);

struct SyncResult {
  bool synchronizing = false;
  SyncMethod method = SyncMethod::pair_criterion;
  std::optional<Word> word;
  std::size_t cerny_bound = 0;  // (n-1)^2
  std::optional<bool> within_bound;

  std::optional<std::size_t> word_length() const {
    return word ? std::optional<std::size_t>(word->size()) : std::nullopt;
  }
};

/// Builds a result for `w`, re-verifying it by application. Throws
/// `PreconditionError` when `w` does not synchronize.
SyncResult make_sync_result(const Automaton& a, SyncMethod method, Word w);

/// Every pair of states can be merged by some word.
bool is_synchronizing_pairs(const Automaton& a);

constexpr std::size_t default_subset_limit = 20;
/// Hard ceiling for the subset search regardless of override.
constexpr std::size_t max_subset_limit = 32;

/// Minimum-length synchronizing word, lexicographically least among the
/// minimum ones; nullopt when none exists. Throws `LimitError` when the state
/// count exceeds `limit`.
std::optional<Word> shortest_sync_word(const Automaton& a,
                                       std::size_t limit = default_subset_limit);

/// Repeatedly merges the least pair of the current image with a shortest
/// pair-merging word. Not minimal in general.
std::optional<Word> greedy_sync_word(const Automaton& a);

/// The letter^level word for the first letter whose cycle is a single state;
/// sends Q onto {q0} on a semi-flower automaton. Throws `PreconditionError`.
Word thm2_word(const Automaton& a);

struct Thm4Construction {
  Word word;
  Letter circular = 0;
  Letter swap_letter = 0;
  std::size_t m = 0;      // position of the second cycle state in the cyclic ordering
  std::size_t level = 0;
  std::size_t k = 0;      // merging index found
  std::size_t order = 0;  // t = n / gcd(n, n - m)
};

/// Synchronizing word for an odd-state circular semi-flower automaton with a
/// letter whose cycle has length 2: b^(1+2l) a^(k(n-m)) b^(1+2l) for the
/// least merging k in [1, t]. Throws `PreconditionError` when the input is
/// outside that class and `TheoremViolation` if no k merges.
Thm4Construction thm4_construction(const Automaton& a);
Word thm4_word(const Automaton& a);

/// |w| <= (n-1)^2. Throws `PreconditionError` when `w` does not synchronize.
bool check_cerny_bound(const Automaton& a, const Word& w);

std::size_t cerny_bound(std::size_t n);

}  // namespace csfa
