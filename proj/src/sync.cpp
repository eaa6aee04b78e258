#include "csfa/sync.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "csfa/cluster.hpp"
#include "csfa/error.hpp"

namespace csfa {

std::string_view to_string(SyncMethod m) {
  switch (m) {
    case SyncMethod::subset_bfs: return "subset-bfs";
    case SyncMethod::pair_greedy: return "pair-greedy";
    case SyncMethod::thm2_construction: return "thm2-construction";
    case SyncMethod::thm4_construction: return "thm4-construction";
    case SyncMethod::pair_criterion: return "pair-criterion";
  }
  return "unknown";
}

std::size_t cerny_bound(std::size_t n) { return (n - 1) * (n - 1); }

SyncResult make_sync_result(const Automaton& a, SyncMethod method, Word w) {
  if (!synchronizes(a, w)) {
    throw PreconditionError("word '" + render_word(a, w) + "' does not synchronize");
  }
  SyncResult r;
  r.synchronizing = true;
  r.method = method;
  r.cerny_bound = cerny_bound(a.state_count());
  r.within_bound = w.size() <= r.cerny_bound;
  r.word = std::move(w);
  return r;
}

bool check_cerny_bound(const Automaton& a, const Word& w) {
  if (!synchronizes(a, w)) {
    throw PreconditionError("word '" + render_word(a, w) + "' does not synchronize");
  }
  return w.size() <= cerny_bound(a.state_count());
}

namespace {

constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

// Shortest merging distances over the pair graph. Entry p * n + q holds the
// length of a shortest word w with p.w == q.w; diagonal entries are 0.
class PairGraph {
 public:
  explicit PairGraph(const Automaton& a) : a_(a), n_(a.state_count()) {
    dist_.assign(n_ * n_, unreachable);
    std::vector<std::vector<std::vector<State>>> pre(
        a.letter_count(), std::vector<std::vector<State>>(n_));
    for (Letter x = 0; x < a.letter_count(); ++x) {
      for (State p = 0; p < n_; ++p) pre[x][a.next(p, x)].push_back(p);
    }
    std::vector<std::pair<State, State>> queue;
    for (State p = 0; p < n_; ++p) {
      dist_[index(p, p)] = 0;
      queue.emplace_back(p, p);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [u, v] = queue[head];
      std::size_t d = dist_[index(u, v)];
      for (Letter x = 0; x < a.letter_count(); ++x) {
        for (State p : pre[x][u]) {
          for (State q : pre[x][v]) {
            if (p == q) continue;
            auto& slot = dist_[index(p, q)];
            if (slot == unreachable) {
              slot = d + 1;
              dist_[index(q, p)] = d + 1;
              queue.emplace_back(std::min(p, q), std::max(p, q));
            }
          }
        }
      }
    }
  }

  std::size_t distance(State p, State q) const { return dist_[index(p, q)]; }

  bool all_mergeable() const {
    return std::find(dist_.begin(), dist_.end(), unreachable) == dist_.end();
  }

  // Shortest merging word, choosing the first letter that makes progress.
  Word merging_word(State p, State q) const {
    Word w;
    while (p != q) {
      std::size_t d = distance(p, q);
      for (Letter x = 0; x < a_.letter_count(); ++x) {
        State p2 = a_.next(p, x);
        State q2 = a_.next(q, x);
        if (distance(p2, q2) + 1 == d) {
          w.push_back(x);
          p = p2;
          q = q2;
          break;
        }
      }
    }
    return w;
  }

 private:
  std::size_t index(State p, State q) const { return p * n_ + q; }

  const Automaton& a_;
  std::size_t n_;
  std::vector<std::size_t> dist_;
};

}  // namespace

bool is_synchronizing_pairs(const Automaton& a) { return PairGraph(a).all_mergeable(); }

std::optional<Word> shortest_sync_word(const Automaton& a, std::size_t limit) {
  const std::size_t n = a.state_count();
  if (limit > max_subset_limit) {
    throw LimitError("subset search limit " + std::to_string(limit) + " exceeds ceiling " +
                     std::to_string(max_subset_limit));
  }
  if (n > limit) {
    throw LimitError("subset search needs n <= " + std::to_string(limit) + ", got " +
                     std::to_string(n));
  }
  using Mask = std::uint64_t;
  struct Parent {
    Mask from;
    Letter letter;
  };
  auto apply = [&](Mask s, Letter x) {
    Mask out = 0;
    while (s != 0) {
      auto p = static_cast<State>(std::countr_zero(s));
      s &= s - 1;
      out |= Mask{1} << a.next(p, x);
    }
    return out;
  };

  const Mask full = (n == 64) ? ~Mask{0} : (Mask{1} << n) - 1;
  std::unordered_map<Mask, Parent> parent;
  parent.emplace(full, Parent{full, 0});
  std::vector<Mask> queue{full};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Mask s = queue[head];
    for (Letter x = 0; x < a.letter_count(); ++x) {
      Mask t = apply(s, x);
      if (!parent.emplace(t, Parent{s, x}).second) continue;
      if (std::has_single_bit(t)) {
        Word w;
        for (Mask cur = t; cur != full; cur = parent.at(cur).from) {
          w.push_back(parent.at(cur).letter);
        }
        std::reverse(w.begin(), w.end());
        return w;
      }
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

std::optional<Word> greedy_sync_word(const Automaton& a) {
  PairGraph pairs(a);
  if (!pairs.all_mergeable()) return std::nullopt;
  Word w;
  auto current = image_of_states(a, w);
  while (current.size() > 1) {
    Word merge = pairs.merging_word(current[0], current[1]);
    w.insert(w.end(), merge.begin(), merge.end());
    current = image_of_states(a, w);
  }
  if (!synchronizes(a, w)) {
    throw TheoremViolation("greedy word failed to synchronize", serialize_automaton(a));
  }
  return w;
}

Word thm2_word(const Automaton& a) {
  if (!is_semi_flower(a)) throw PreconditionError("automaton is not semi-flower");
  for (Letter b = 0; b < a.letter_count(); ++b) {
    auto d = decompose(a, b);
    if (d.clusters.size() != 1) {
      throw TheoremViolation("semi-flower automaton with " + std::to_string(d.clusters.size()) +
                                 " clusters for letter '" + a.letter_name(b) + "'",
                             serialize_automaton(a));
    }
    if (d.clusters.front().cycle.size() != 1) continue;
    Word w = power(b, d.max_level);
    if (image_of_states(a, w) != std::vector<State>{a.initial()}) {
      throw TheoremViolation("letter power does not send Q onto {q0}", serialize_automaton(a));
    }
    return w;
  }
  throw PreconditionError("no letter has a cycle of length 1");
}

Thm4Construction thm4_construction(const Automaton& a) {
  const std::size_t n = a.state_count();
  if (!is_semi_flower(a)) throw PreconditionError("automaton is not semi-flower");
  auto circ = circular_letter(a);
  if (!circ) throw PreconditionError("automaton is not circular");
  if (n % 2 == 0) throw PreconditionError("even state count");

  std::optional<Letter> swap;
  LetterCycle cycle;
  for (Letter b = 0; b < a.letter_count() && !swap; ++b) {
    auto c = letter_cycle(a, b);
    if (c.length == 2) {
      swap = b;
      cycle = std::move(c);
    }
  }
  if (!swap) throw PreconditionError("no letter has a cycle of length 2");

  auto ordering = cyclic_ordering(a, *circ);
  const State q0 = a.initial();
  const State qm = cycle.states[0] == q0 ? cycle.states[1] : cycle.states[0];
  const std::size_t m = static_cast<std::size_t>(
      std::find(ordering.begin(), ordering.end(), qm) - ordering.begin());

  const Word swapper = power(*swap, 1 + 2 * cycle.level);
  auto swapped = word_transform(a, swapper);
  if (swapped.image() != std::vector<State>{std::min(q0, qm), std::max(q0, qm)} ||
      swapped(q0) != qm || swapped(qm) != q0) {
    throw TheoremViolation("odd letter power does not swap the 2-cycle", serialize_automaton(a));
  }

  Thm4Construction out;
  out.circular = *circ;
  out.swap_letter = *swap;
  out.m = m;
  out.level = cycle.level;
  out.order = n / std::gcd(n, n - m);

  for (std::size_t k = 1; k <= out.order; ++k) {
    Word wk = power(*circ, k * (n - m));
    wk.insert(wk.end(), swapper.begin(), swapper.end());
    if (apply_word(a, q0, wk) != apply_word(a, qm, wk)) continue;
    out.k = k;
    out.word = swapper;
    out.word.insert(out.word.end(), wk.begin(), wk.end());
    if (!synchronizes(a, out.word)) {
      throw TheoremViolation("constructed word does not synchronize", serialize_automaton(a));
    }
    return out;
  }
  throw TheoremViolation("no merging index k <= " + std::to_string(out.order) +
                             " for an odd circular semi-flower automaton with a 2-cycle",
                         serialize_automaton(a));
}

Word thm4_word(const Automaton& a) { return thm4_construction(a).word; }

}  // namespace csfa
