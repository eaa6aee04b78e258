#include "csfa/cluster.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "csfa/error.hpp"

namespace csfa {

ClusterDecomposition decompose(const Automaton& a, Letter letter) {
  if (letter >= a.letter_count()) throw PreconditionError("letter out of range");
  const std::size_t n = a.state_count();
  constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();

  ClusterDecomposition d;
  d.letter = letter;
  d.cluster_of.assign(n, unassigned);
  d.level.assign(n, unassigned);

  // Walk from each unprocessed state; a walk ends on a state of the current
  // walk (a new cycle) or on an already assigned state.
  std::vector<std::uint8_t> on_walk(n, 0);
  std::vector<State> walk;
  std::vector<std::vector<State>> cycles;
  for (State s = 0; s < n; ++s) {
    if (d.cluster_of[s] != unassigned) continue;
    walk.clear();
    State v = s;
    while (d.cluster_of[v] == unassigned && !on_walk[v]) {
      on_walk[v] = 1;
      walk.push_back(v);
      v = a.next(v, letter);
    }
    std::size_t id;
    if (on_walk[v]) {
      id = cycles.size();
      std::vector<State> cycle;
      State c = v;
      do {
        cycle.push_back(c);
        d.level[c] = 0;
        c = a.next(c, letter);
      } while (c != v);
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      cycles.push_back(std::move(cycle));
    } else {
      id = d.cluster_of[v];
    }
    for (State w : walk) {
      d.cluster_of[w] = id;
      on_walk[w] = 0;
    }
  }

  // Levels: distance to the cycle, by reverse BFS from the cycle states.
  std::vector<std::vector<State>> preimage(n);
  for (State p = 0; p < n; ++p) preimage[a.next(p, letter)].push_back(p);
  std::vector<State> frontier;
  for (const auto& cycle : cycles) frontier.insert(frontier.end(), cycle.begin(), cycle.end());
  for (std::size_t depth = 1; !frontier.empty(); ++depth) {
    std::vector<State> next;
    for (State u : frontier) {
      for (State p : preimage[u]) {
        if (d.level[p] == unassigned) {
          d.level[p] = depth;
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }

  // Cluster ids were assigned in order of least member, since the outer loop
  // visits states in increasing order and the first state of a new cluster
  // always opens a new cycle.
  d.clusters.resize(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) d.clusters[i].cycle = std::move(cycles[i]);
  for (State p = 0; p < n; ++p) {
    auto& c = d.clusters[d.cluster_of[p]];
    c.members.push_back(p);
    c.max_level = std::max(c.max_level, d.level[p]);
    d.max_level = std::max(d.max_level, d.level[p]);
  }
  return d;
}

bool is_one_cluster(const Automaton& a, Letter letter) {
  return decompose(a, letter).clusters.size() == 1;
}

bool LetterCycle::contains(State p) const {
  return std::find(states.begin(), states.end(), p) != states.end();
}

LetterCycle letter_cycle(const Automaton& a, Letter letter) {
  auto d = decompose(a, letter);
  if (d.clusters.size() != 1) {
    throw PreconditionError("letter '" + a.letter_name(letter) + "' has " +
                            std::to_string(d.clusters.size()) + " clusters");
  }
  LetterCycle c;
  c.states = std::move(d.clusters.front().cycle);
  c.length = c.states.size();
  c.level = d.max_level;
  if (!c.contains(a.initial()) && is_semi_flower(a)) {
    throw TheoremViolation("semi-flower automaton whose letter cycle avoids q0",
                           serialize_automaton(a));
  }
  return c;
}

bool level_image_check(const Automaton& a, Letter letter) {
  auto c = letter_cycle(a, letter);
  auto image = image_of_states(a, power(letter, c.level));
  auto cycle = c.states;
  std::sort(cycle.begin(), cycle.end());
  return image == cycle;
}

}  // namespace csfa
