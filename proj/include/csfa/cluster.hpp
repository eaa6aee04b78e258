#pragma once

#include <cstddef>
#include <vector>

#include "csfa/automaton.hpp"

namespace csfa {

/// One weakly connected component of a single-letter functional graph: a
/// unique cycle with in-trees hanging off it.
struct Cluster {
  std::vector<State> members;  // sorted
  std::vector<State> cycle;    // letter order, starting at the least state on it
  std::size_t max_level = 0;
};

/// Functional-graph structure of one letter.
struct ClusterDecomposition {
  Letter letter = 0;
  std::vector<Cluster> clusters;        // ordered by least member
  std::vector<std::size_t> cluster_of;  // state -> index into clusters
  std::vector<std::size_t> level;       // state -> distance to its cycle
  std::size_t max_level = 0;
};

ClusterDecomposition decompose(const Automaton& a, Letter letter);

bool is_one_cluster(const Automaton& a, Letter letter);

struct LetterCycle {
  std::vector<State> states;  // cyclic order from the least state
  std::size_t length = 0;
  std::size_t level = 0;      // max level of the (single) cluster

  bool contains(State p) const;
};

/// The unique cycle of a one-cluster letter. Throws `PreconditionError` when
/// the letter has more than one cluster, and `TheoremViolation` when the
/// automaton is semi-flower but q0 is off the cycle.
LetterCycle letter_cycle(const Automaton& a, Letter letter);

/// Q . letter^l equals the cycle's state set. Throws `PreconditionError`
/// for multi-cluster letters.
bool level_image_check(const Automaton& a, Letter letter);

}  // namespace csfa
