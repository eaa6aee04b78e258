#include "csfa/lab.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <thread>

#include "csfa/cluster.hpp"
#include "csfa/error.hpp"

namespace csfa {

// ---------------------------------------------------------------------------
// Search space

Automaton make_canonical(std::span<const State> b_row) {
  const std::size_t n = b_row.size();
  std::vector<State> a_row(n);
  for (std::size_t i = 0; i < n; ++i) a_row[i] = static_cast<State>((i + 1) % n);
  return Automaton(n, {"a", "b"}, {std::move(a_row), std::vector<State>(b_row.begin(), b_row.end())},
                   0, {0});
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

std::vector<State> b_row_at(std::size_t n, std::uint64_t index) {
  std::vector<State> row(n);
  for (std::size_t i = n; i-- > 0;) {
    row[i] = static_cast<State>(index % n);
    index /= n;
  }
  return row;
}

bool EnumerationFilter::passes(const Automaton& a) const {
  if ((sfa || csfa) && !is_semi_flower(a)) return false;
  if (csfa && !circular_letter(a)) return false;
  if (cycle_length) {
    auto d = decompose(a, canonical_free);
    if (d.clusters.size() != 1 || d.clusters.front().cycle.size() != *cycle_length) return false;
  }
  return true;
}

EnumerationFilter parse_filter(const std::string& text) {
  EnumerationFilter f;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "sfa") {
      f.sfa = true;
    } else if (item == "csfa") {
      f.csfa = true;
    } else if (item.rfind("cycle", 0) == 0 && item.size() > 5 &&
               std::all_of(item.begin() + 5, item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      f.cycle_length = std::stoul(item.substr(5));
    } else {
      throw PreconditionError("unknown filter '" + item + "'");
    }
  }
  return f;
}

std::string to_string(const EnumerationFilter& f) {
  std::vector<std::string> parts;
  if (f.sfa) parts.emplace_back("sfa");
  if (f.csfa) parts.emplace_back("csfa");
  if (f.cycle_length) parts.push_back("cycle" + std::to_string(*f.cycle_length));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

std::uint64_t candidate_count(const EnumerationSpec& spec) {
  return spec.mode == EnumerationMode::exhaustive ? ipow(spec.n, spec.n) : spec.count;
}

void enumerate_range(const EnumerationSpec& spec, std::uint64_t begin, std::uint64_t end,
                     const Visitor& visit) {
  if (spec.n < 2) throw PreconditionError("state count must be greater than 1");
  if (spec.n > max_exhaustive_n) {
    throw LimitError("exhaustive enumeration needs n <= " + std::to_string(max_exhaustive_n));
  }
  end = std::min(end, ipow(spec.n, spec.n));
  if (begin >= end) return;
  auto row = b_row_at(spec.n, begin);
  for (std::uint64_t index = begin; index < end; ++index) {
    auto a = make_canonical(row);
    if (spec.filter.passes(a)) visit(a, row, index);
    // odometer increment, last position least significant
    for (std::size_t i = spec.n; i-- > 0;) {
      if (++row[i] < spec.n) break;
      row[i] = 0;
    }
  }
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

void enumerate(const EnumerationSpec& spec, const Visitor& visit) {
  if (spec.mode == EnumerationMode::exhaustive) {
    enumerate_range(spec, 0, candidate_count(spec), visit);
    return;
  }
  if (spec.n < 2) throw PreconditionError("state count must be greater than 1");
  std::mt19937_64 rng(spec.seed);
  std::vector<State> row(spec.n);
  for (std::uint64_t draw = 0; draw < spec.count; ++draw) {
    for (auto& s : row) s = static_cast<State>(uniform_below(rng, spec.n));
    auto a = make_canonical(row);
    if (spec.filter.passes(a)) visit(a, row, draw);
  }
}

std::vector<Automaton> enumerate_all(const EnumerationSpec& spec) {
  std::vector<Automaton> out;
  enumerate(spec, [&](const Automaton& a, std::span<const State>, std::uint64_t) {
    out.push_back(a);
  });
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_range(std::uint64_t total,
                                                                     std::size_t parts) {
  parts = std::max<std::size_t>(parts, 1);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  std::uint64_t begin = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    std::uint64_t size = total / parts + (i < total % parts ? 1 : 0);
    ranges.emplace_back(begin, begin + size);
    begin += size;
  }
  return ranges;
}

// ---------------------------------------------------------------------------
// Sampling

CsfaSampler::CsfaSampler(std::size_t n, std::uint64_t seed, std::uint64_t max_attempts)
    : n_(n), rng_(seed), max_attempts_(max_attempts) {
  if (n < 2) throw PreconditionError("state count must be greater than 1");
}

Automaton CsfaSampler::next() {
  std::vector<State> row(n_);
  for (std::uint64_t tries = 0; tries < max_attempts_; ++tries) {
    for (auto& s : row) s = static_cast<State>(uniform_below(rng_, n_));
    ++attempts_;
    auto a = make_canonical(row);
    if (is_semi_flower(a)) {
      ++accepted_;
      return a;
    }
  }
  std::ostringstream os;
  os << "no circular semi-flower automaton with " << n_ << " states after " << max_attempts_
     << " attempts (overall acceptance rate " << accepted_ << "/" << attempts_ << ")";
  throw LimitError(os.str());
}

Automaton random_csfa(std::size_t n, std::uint64_t seed, std::uint64_t max_attempts) {
  return CsfaSampler(n, seed, max_attempts).next();
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

const std::vector<State> a1_row{3, 3, 3, 0, 0, 0};
const std::vector<State> a2_row{3, 3, 3, 6, 6, 6, 0, 0, 0};
const std::vector<State> e1_row{0, 0};
const std::vector<State> e2_row{1, 0, 0};

}  // namespace

PaperExamples paper_examples() {
  return {make_canonical(a1_row), make_canonical(a2_row), make_canonical(e1_row),
          make_canonical(e2_row)};
}

std::vector<FixtureCheck> check_fixtures(std::size_t monoid_cap) {
  const auto fx = paper_examples();
  std::vector<FixtureCheck> out;
  auto check = [&](const char* name, const char* property, auto&& predicate) {
    bool ok = false;
    try {
      ok = predicate();
    } catch (const Error&) {
      ok = false;
    }
    out.push_back({name, property, ok});
  };
  auto cycle_is = [](const Automaton& a, std::vector<State> states, std::size_t level) {
    auto c = letter_cycle(a, canonical_free);
    return c.states == states && c.level == level;
  };
  auto no_constant = [&](const Automaton& a) {
    auto m = transition_monoid(a, monoid_cap);
    return has_constant(m) == std::optional<bool>(false);
  };
  auto units_order = [&](const Automaton& a) {
    auto r = verify_remark(a, monoid_cap);
    return r.holds();
  };

  check("A1", "circular semi-flower", [&] { return is_csfa(fx.a1) && circular_letter(fx.a1) == 0u; });
  check("A1", "b-cycle {q0,q3} at level 1", [&] { return cycle_is(fx.a1, {0, 3}, 1); });
  check("A1", "non-synchronizing", [&] { return !is_synchronizing_pairs(fx.a1); });
  check("A1", "monoid has no constant", [&] { return no_constant(fx.a1); });
  check("A1", "units of order 6 generated by a", [&] { return units_order(fx.a1); });

  check("A2", "circular semi-flower", [&] { return is_csfa(fx.a2) && circular_letter(fx.a2) == 0u; });
  check("A2", "b-cycle {q0,q3,q6}", [&] { return letter_cycle(fx.a2, canonical_free).states == std::vector<State>{0, 3, 6}; });
  check("A2", "non-synchronizing", [&] { return !is_synchronizing_pairs(fx.a2); });

  check("E1", "circular semi-flower", [&] { return is_csfa(fx.e1); });
  check("E1", "b^l synchronizes onto q0", [&] { return thm2_word(fx.e1) == Word{1}; });
  check("E1", "shortest word b", [&] { return shortest_sync_word(fx.e1) == Word{1}; });
  check("E1", "units of order 2 generated by a", [&] { return units_order(fx.e1); });

  check("E2", "circular semi-flower", [&] { return is_csfa(fx.e2); });
  check("E2", "b-cycle {q0,q1} at level 1", [&] { return cycle_is(fx.e2, {0, 1}, 1); });
  check("E2", "shortest word bab", [&] { return shortest_sync_word(fx.e2) == Word{1, 0, 1}; });
  check("E2", "odd 2-cycle word bbbaaaabbb", [&] {
    return thm4_word(fx.e2) == Word{1, 1, 1, 0, 0, 0, 0, 1, 1, 1};
  });
  check("E2", "units of order 3 generated by a", [&] { return units_order(fx.e2); });
  return out;
}

bool SweepReport::fixtures_confirmed() const {
  return std::all_of(fixtures.begin(), fixtures.end(),
                     [](const FixtureCheck& c) { return c.confirmed; });
}

// ---------------------------------------------------------------------------
// Sweeps

void NSweep::merge(const NSweep& later) {
  generated += later.generated;
  csfa += later.csfa;
  synchronizing += later.synchronizing;
  non_synchronizing += later.non_synchronizing;
  for (const auto& [len, s] : later.by_cycle_length) {
    auto& mine = by_cycle_length[len];
    mine.count += s.count;
    mine.synchronizing += s.synchronizing;
    mine.non_synchronizing += s.non_synchronizing;
  }
  for (auto [mine, theirs] :
       {std::pair{&one_cluster, &later.one_cluster}, {&fixed_point_sync, &later.fixed_point_sync},
        {&unique_permutation, &later.unique_permutation},
        {&odd_two_cycle_sync, &later.odd_two_cycle_sync}, {&units_cyclic, &later.units_cyclic},
        {&decider_agreement, &later.decider_agreement}, {&cerny_bound, &later.cerny_bound}}) {
    mine->checked += theirs->checked;
  }
  max_merge_index = std::max(max_merge_index, later.max_merge_index);
  max_shortest_word = std::max(max_shortest_word, later.max_shortest_word);
  max_level = std::max(max_level, later.max_level);
  even_two_cycle_non_sync += later.even_two_cycle_non_sync;
  odd_three_cycle_non_sync += later.odd_three_cycle_non_sync;
  if (!first_even_two_cycle_non_sync) first_even_two_cycle_non_sync = later.first_even_two_cycle_non_sync;
  if (!first_odd_three_cycle_non_sync) first_odd_three_cycle_non_sync = later.first_odd_three_cycle_non_sync;
  for (const auto& name : later.fixtures_enumerated) {
    if (std::find(fixtures_enumerated.begin(), fixtures_enumerated.end(), name) ==
        fixtures_enumerated.end()) {
      fixtures_enumerated.push_back(name);
    }
  }
}

namespace {

[[noreturn]] void violated(const Automaton& a, const std::string& what) {
  throw TheoremViolation(what, serialize_automaton(a));
}

}  // namespace

void sweep_candidate(const Automaton& a, std::span<const State> b_row,
                     const SweepOptions& options, NSweep& acc) {
  const std::size_t n = a.state_count();
  ++acc.csfa;

  for (Letter x = 0; x < a.letter_count(); ++x) {
    if (!is_one_cluster(a, x)) violated(a, "semi-flower automaton with more than one cluster");
  }
  ++acc.one_cluster.checked;

  if (!verify_unique_circular_permutation(a).holds()) {
    violated(a, "semi-flower automaton with distinct or non-circular permutation letters");
  }
  ++acc.unique_permutation.checked;

  const bool sync = is_synchronizing_pairs(a);
  std::optional<Word> shortest;
  if (n <= options.subset_limit) {
    shortest = shortest_sync_word(a, options.subset_limit);
    if (shortest.has_value() != sync) violated(a, "pair criterion and subset search disagree");
    if (shortest && !synchronizes(a, *shortest)) violated(a, "shortest word does not synchronize");
  }
  if (sync) {
    auto greedy = greedy_sync_word(a);
    if (!greedy || !synchronizes(a, *greedy)) violated(a, "greedy word does not synchronize");
    if (shortest && shortest->size() > greedy->size()) violated(a, "greedy word beats shortest word");
  }

  const auto cycle = letter_cycle(a, canonical_free);
  acc.max_level = std::max(acc.max_level, cycle.level);
  auto& stats = acc.by_cycle_length[cycle.length];
  ++stats.count;
  if (sync) {
    ++acc.synchronizing;
    ++stats.synchronizing;
  } else {
    ++acc.non_synchronizing;
    ++stats.non_synchronizing;
  }

  if (n <= options.remark_max_n) {
    auto m = transition_monoid(a, options.monoid_cap);
    if (!m.truncated()) {
      if (has_constant(m) != std::optional<bool>(sync)) {
        violated(a, "monoid constant test disagrees with pair criterion");
      }
      if (!verify_remark(a, m).holds()) violated(a, "group of units is not <a> of order n");
      ++acc.units_cyclic.checked;
    }
  }
  ++acc.decider_agreement.checked;

  if (shortest) {
    acc.max_shortest_word = std::max(acc.max_shortest_word, shortest->size());
    if (!check_cerny_bound(a, *shortest)) violated(a, "shortest word exceeds (n-1)^2");
    ++acc.cerny_bound.checked;
  }

  if (cycle.length == 1) {
    const Word w = thm2_word(a);  // throws on failure
    if (!sync) violated(a, "fixed-point cycle automaton is not synchronizing");
    if (shortest && shortest->size() > w.size()) violated(a, "letter power beats shortest word");
    ++acc.fixed_point_sync.checked;
  }

  if (n % 2 == 1 && cycle.length == 2) {
    const auto c = thm4_construction(a);  // throws when no k <= t merges
    if (!sync || c.k < 1 || c.k > c.order) violated(a, "odd 2-cycle construction out of range");
    if (shortest && shortest->size() > c.word.size()) {
      violated(a, "constructive word beats shortest word");
    }
    acc.max_merge_index = std::max(acc.max_merge_index, c.k);
    ++acc.odd_two_cycle_sync.checked;
  }

  std::vector<State> row(b_row.begin(), b_row.end());
  if (!sync && n % 2 == 0 && cycle.length == 2) {
    ++acc.even_two_cycle_non_sync;
    if (!acc.first_even_two_cycle_non_sync) acc.first_even_two_cycle_non_sync = row;
  }
  if (!sync && n % 2 == 1 && cycle.length == 3) {
    ++acc.odd_three_cycle_non_sync;
    if (!acc.first_odd_three_cycle_non_sync) acc.first_odd_three_cycle_non_sync = row;
  }

  for (auto [name, fixture] : {std::pair{"A1", &a1_row}, {"A2", &a2_row}, {"E1", &e1_row},
                               {"E2", &e2_row}}) {
    if (*fixture == row && std::find(acc.fixtures_enumerated.begin(), acc.fixtures_enumerated.end(),
                                     name) == acc.fixtures_enumerated.end()) {
      acc.fixtures_enumerated.emplace_back(name);
    }
  }
}

NSweep sweep_exhaustive(std::size_t n, const SweepOptions& options) {
  EnumerationSpec spec;
  spec.n = n;
  spec.filter.csfa = true;
  const std::uint64_t total = candidate_count(spec);
  if (n > max_exhaustive_n) {
    throw LimitError("exhaustive sweep needs n <= " + std::to_string(max_exhaustive_n));
  }

  const auto ranges = partition_range(total, options.threads);
  std::vector<NSweep> partial(ranges.size());
  std::vector<std::exception_ptr> errors(ranges.size());
  auto work = [&](std::size_t i) {
    try {
      partial[i].n = n;
      enumerate_range(spec, ranges[i].first, ranges[i].second,
                      [&](const Automaton& a, std::span<const State> row, std::uint64_t) {
                        sweep_candidate(a, row, options, partial[i]);
                      });
      partial[i].generated = ranges[i].second - ranges[i].first;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (ranges.size() == 1) {
    work(0);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < ranges.size(); ++i) workers.emplace_back(work, i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  NSweep out;
  out.n = n;
  out.mode = EnumerationMode::exhaustive;
  for (const auto& p : partial) out.merge(p);
  return out;
}

NSweep sweep_random(std::size_t n, const SweepOptions& options) {
  NSweep out;
  out.n = n;
  out.mode = EnumerationMode::random;
  CsfaSampler sampler(n, options.seed);
  for (std::uint64_t i = 0; i < options.count; ++i) {
    auto a = sampler.next();
    auto row = a.row(canonical_free);
    sweep_candidate(a, row, options, out);
  }
  out.generated = sampler.attempts();
  return out;
}

SweepReport verify_theorems(const SweepOptions& options) {
  SweepReport report;
  if (options.include_fixtures) report.fixtures = check_fixtures(options.monoid_cap);
  for (std::size_t n : options.n_values) {
    report.sweeps.push_back(options.mode == EnumerationMode::exhaustive
                                ? sweep_exhaustive(n, options)
                                : sweep_random(n, options));
  }
  return report;
}

}  // namespace csfa
