#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the library algorithms they are compared against; they only read
// the transition table.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "csfa/automaton.hpp"

namespace oracle {

using csfa::Automaton;
using csfa::Letter;
using csfa::State;
using csfa::Word;

inline std::vector<State> fold_all(const Automaton& a, const Word& w) {
  std::vector<State> img(a.state_count());
  for (State p = 0; p < a.state_count(); ++p) {
    State q = p;
    for (Letter x : w) q = a.row(x)[q];
    img[p] = q;
  }
  return img;
}

inline bool collapses(const Automaton& a, const Word& w) {
  auto img = fold_all(a, w);
  return std::all_of(img.begin(), img.end(), [&](State s) { return s == img[0]; });
}

/// Every simple cycle (distinct vertices, at least one edge, self-loops
/// included) by DFS from each start vertex; true iff each one visits q0.
inline bool all_simple_cycles_visit_initial(const Automaton& a) {
  const std::size_t n = a.state_count();
  std::vector<bool> on_path(n, false);
  std::vector<State> path;
  bool ok = true;
  std::function<void(State, State)> dfs = [&](State start, State u) {
    for (Letter x = 0; x < a.letter_count() && ok; ++x) {
      State v = a.row(x)[u];
      if (v == start) {
        if (std::find(path.begin(), path.end(), a.initial()) == path.end()) ok = false;
      } else if (!on_path[v] && v > start) {  // each cycle rooted at its least vertex
        on_path[v] = true;
        path.push_back(v);
        dfs(start, v);
        path.pop_back();
        on_path[v] = false;
      }
    }
  };
  for (State s = 0; s < n && ok; ++s) {
    on_path[s] = true;
    path = {s};
    dfs(s, s);
    on_path[s] = false;
  }
  return ok;
}

inline std::vector<bool> reach(const Automaton& a, std::vector<State> from, bool backward) {
  const std::size_t n = a.state_count();
  std::vector<bool> seen(n, false);
  for (State s : from) seen[s] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (State p = 0; p < n; ++p) {
      for (Letter x = 0; x < a.letter_count(); ++x) {
        State q = a.row(x)[p];
        State src = backward ? q : p;
        State dst = backward ? p : q;
        if (seen[src] && !seen[dst]) {
          seen[dst] = changed = true;
        }
      }
    }
  }
  return seen;
}

/// Semi-flower test straight from the definition, with cycles enumerated.
inline bool is_sfa_by_definition(const Automaton& a) {
  if (a.finals() != std::vector<State>{a.initial()}) return false;
  auto fwd = reach(a, {a.initial()}, false);
  auto bwd = reach(a, a.finals(), true);
  for (std::size_t p = 0; p < a.state_count(); ++p) {
    if (!fwd[p] || !bwd[p]) return false;
  }
  return all_simple_cycles_visit_initial(a);
}

/// Shortest synchronizing word by enumerating all words of each length in
/// lexicographic order. Exponential; only for tiny inputs.
inline std::optional<Word> shortest_by_enumeration(const Automaton& a, std::size_t max_len) {
  const std::size_t k = a.letter_count();
  for (std::size_t len = 0; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      if (len > 0 && collapses(a, w)) return w;
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == k) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
  }
  return std::nullopt;
}

/// Transition monoid as a set of image vectors, by fixpoint iteration.
inline std::set<std::vector<State>> monoid_by_fixpoint(const Automaton& a) {
  std::vector<State> id(a.state_count());
  for (State p = 0; p < a.state_count(); ++p) id[p] = p;
  std::set<std::vector<State>> elems{id};
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = elems;
    for (const auto& e : snapshot) {
      for (Letter x = 0; x < a.letter_count(); ++x) {
        std::vector<State> f(e.size());
        for (std::size_t p = 0; p < e.size(); ++p) f[p] = a.row(x)[e[p]];
        grew |= elems.insert(std::move(f)).second;
      }
    }
  }
  return elems;
}

inline bool monoid_has_constant(const Automaton& a) {
  for (const auto& e : monoid_by_fixpoint(a)) {
    if (std::all_of(e.begin(), e.end(), [&](State s) { return s == e[0]; })) return true;
  }
  return false;
}

inline Automaton two_letter(std::vector<State> a_row, std::vector<State> b_row,
                            State initial = 0, std::vector<State> finals = {0}) {
  const std::size_t n = a_row.size();
  return Automaton(n, {"a", "b"}, {std::move(a_row), std::move(b_row)}, initial,
                   std::move(finals));
}

inline std::vector<State> row_from_index(std::size_t n, std::uint64_t idx) {
  std::vector<State> r(n);
  for (std::size_t i = n; i-- > 0;) {
    r[i] = static_cast<State>(idx % n);
    idx /= n;
  }
  return r;
}

inline std::vector<State> random_row(std::mt19937_64& rng, std::size_t n) {
  std::vector<State> r(n);
  for (auto& s : r) s = static_cast<State>(rng() % n);
  return r;
}

}  // namespace oracle
