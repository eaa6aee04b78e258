#include "csfa/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "csfa/error.hpp"

namespace csfa {

Word power(Letter letter, std::size_t count) { return Word(count, letter); }

// ---------------------------------------------------------------------------
// Transformation

Transformation::Transformation(std::vector<State> images) : images_(std::move(images)) {
  for (State s : images_) {
    if (s >= images_.size()) {
      throw std::invalid_argument("transformation image out of range");
    }
  }
}

Transformation Transformation::identity(std::size_t n) {
  std::vector<State> v(n);
  std::iota(v.begin(), v.end(), State{0});
  return Transformation(std::move(v));
}

Transformation Transformation::then(const Transformation& next) const {
  std::vector<State> out(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) out[p] = next.images_[images_[p]];
  Transformation t;
  t.images_ = std::move(out);
  return t;
}

bool Transformation::is_identity() const {
  for (std::size_t p = 0; p < images_.size(); ++p) {
    if (images_[p] != p) return false;
  }
  return true;
}

bool Transformation::is_permutation() const { return rank() == images_.size(); }

bool Transformation::is_constant() const {
  return std::adjacent_find(images_.begin(), images_.end(), std::not_equal_to<>()) ==
         images_.end();
}

std::size_t Transformation::rank() const {
  std::vector<bool> hit(images_.size(), false);
  std::size_t r = 0;
  for (State s : images_) {
    if (!hit[s]) {
      hit[s] = true;
      ++r;
    }
  }
  return r;
}

std::vector<State> Transformation::image() const {
  std::vector<State> v = images_;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Transformation Transformation::inverse() const {
  if (!is_permutation()) throw PreconditionError("inverse of a non-permutation");
  std::vector<State> inv(images_.size());
  for (std::size_t p = 0; p < images_.size(); ++p) inv[images_[p]] = static_cast<State>(p);
  Transformation t;
  t.images_ = std::move(inv);
  return t;
}

std::vector<std::size_t> Transformation::cycle_type() const {
  if (!is_permutation()) throw PreconditionError("cycle type of a non-permutation");
  std::vector<bool> seen(images_.size(), false);
  std::vector<std::size_t> lengths;
  for (std::size_t p = 0; p < images_.size(); ++p) {
    if (seen[p]) continue;
    std::size_t len = 0;
    for (State q = static_cast<State>(p); !seen[q]; q = images_[q]) {
      seen[q] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

// ---------------------------------------------------------------------------
// Automaton

Automaton::Automaton(std::size_t n, std::vector<std::string> alphabet,
                     std::vector<std::vector<State>> rows, State initial,
                     std::vector<State> finals)
    : n_(n), alphabet_(std::move(alphabet)), initial_(initial), finals_(std::move(finals)) {
  if (n_ < 2) throw std::invalid_argument("state count must be greater than 1");
  if (alphabet_.empty()) throw std::invalid_argument("alphabet is empty");
  if (rows.size() != alphabet_.size()) {
    throw std::invalid_argument("one transition row per letter is required");
  }
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i].empty()) throw std::invalid_argument("empty letter name");
    for (std::size_t j = 0; j < i; ++j) {
      if (alphabet_[i] == alphabet_[j]) {
        throw std::invalid_argument("duplicate letter '" + alphabet_[i] + "'");
      }
    }
  }
  delta_.reserve(n_ * rows.size());
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("non-total transition row");
    for (State s : row) {
      if (s >= n_) throw std::invalid_argument("transition target out of range");
      delta_.push_back(s);
    }
  }
  if (initial_ >= n_) throw std::invalid_argument("initial state out of range");
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  for (State f : finals_) {
    if (f >= n_) throw std::invalid_argument("final state out of range");
  }
}

std::optional<Letter> Automaton::find_letter(std::string_view name) const {
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i] == name) return static_cast<Letter>(i);
  }
  return std::nullopt;
}

bool Automaton::is_final(State p) const {
  return std::binary_search(finals_.begin(), finals_.end(), p);
}

Transformation Automaton::letter_transform(Letter x) const {
  auto r = row(x);
  return Transformation(std::vector<State>(r.begin(), r.end()));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

bool is_header_key(std::string_view k) {
  return k == "states" || k == "alphabet" || k == "initial" || k == "finals";
}

struct PendingRow {
  std::size_t line;
  std::vector<std::string_view> tokens;
};

}  // namespace

Automaton parse_automaton(std::string_view text) {
  std::optional<std::size_t> n;
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::pair<std::size_t, std::string_view>> initial;
  std::optional<std::pair<std::size_t, std::vector<std::string_view>>> finals;
  std::map<std::string, PendingRow, std::less<>> rows;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected '<key>: <values>'");
    std::string_view key = trim(line.substr(0, colon));
    auto values = split_ws(line.substr(colon + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");

    if (key == "states") {
      if (n) throw ParseError(line_no, "duplicate 'states' header");
      if (values.size() != 1) throw ParseError(line_no, "'states' takes one value");
      n = parse_index(values[0], line_no, "state count");
      if (*n < 2) throw ParseError(line_no, "state count must be greater than 1");
    } else if (key == "alphabet") {
      if (alphabet) throw ParseError(line_no, "duplicate 'alphabet' header");
      if (values.empty()) throw ParseError(line_no, "alphabet is empty");
      std::vector<std::string> names;
      for (auto v : values) {
        if (v.find(':') != std::string_view::npos || is_header_key(v)) {
          throw ParseError(line_no, "invalid letter name '" + std::string(v) + "'");
        }
        if (std::find(names.begin(), names.end(), v) != names.end()) {
          throw ParseError(line_no, "duplicate letter '" + std::string(v) + "'");
        }
        names.emplace_back(v);
      }
      alphabet = std::move(names);
    } else if (key == "initial") {
      if (initial) throw ParseError(line_no, "duplicate 'initial' header");
      if (values.size() != 1) throw ParseError(line_no, "'initial' takes one value");
      initial.emplace(line_no, values[0]);
    } else if (key == "finals") {
      if (finals) throw ParseError(line_no, "duplicate 'finals' header");
      finals.emplace(line_no, std::move(values));
    } else {
      if (rows.find(key) != rows.end()) {
        throw ParseError(line_no, "duplicate row for letter '" + std::string(key) + "'");
      }
      rows.emplace(std::string(key), PendingRow{line_no, std::move(values)});
    }
  }

  const std::size_t end_line = 0;
  if (!n) throw ParseError(end_line, "missing 'states' header");
  if (!alphabet) throw ParseError(end_line, "missing 'alphabet' header");
  if (!initial) throw ParseError(end_line, "missing 'initial' header");
  if (!finals) throw ParseError(end_line, "missing 'finals' header");

  State q0 = static_cast<State>(parse_index(initial->second, initial->first, "initial state"));
  if (q0 >= *n) throw ParseError(initial->first, "initial state out of range");

  std::vector<State> final_states;
  for (auto v : finals->second) {
    auto f = parse_index(v, finals->first, "final state");
    if (f >= *n) throw ParseError(finals->first, "final state out of range");
    if (std::find(final_states.begin(), final_states.end(), f) != final_states.end()) {
      throw ParseError(finals->first, "duplicate final state " + std::to_string(f));
    }
    final_states.push_back(static_cast<State>(f));
  }

  for (const auto& [name, row] : rows) {
    if (std::find(alphabet->begin(), alphabet->end(), name) == alphabet->end()) {
      throw ParseError(row.line, "row for unknown letter '" + name + "'");
    }
  }

  std::vector<std::vector<State>> table;
  table.reserve(alphabet->size());
  for (const auto& name : *alphabet) {
    auto it = rows.find(name);
    if (it == rows.end()) throw ParseError(end_line, "missing row for letter '" + name + "'");
    const auto& row = it->second;
    if (row.tokens.size() != *n) {
      throw ParseError(row.line, "non-total row for letter '" + name + "': expected " +
                                     std::to_string(*n) + " entries, got " +
                                     std::to_string(row.tokens.size()));
    }
    std::vector<State> images;
    images.reserve(*n);
    for (auto tok : row.tokens) {
      auto s = parse_index(tok, row.line, "state");
      if (s >= *n) throw ParseError(row.line, "state " + std::to_string(s) + " out of range");
      images.push_back(static_cast<State>(s));
    }
    table.push_back(std::move(images));
  }

  return Automaton(*n, std::move(*alphabet), std::move(table), q0, std::move(final_states));
}

std::string serialize_automaton(const Automaton& a) {
  std::ostringstream os;
  os << "states: " << a.state_count() << '\n';
  os << "alphabet:";
  for (const auto& name : a.alphabet()) os << ' ' << name;
  os << '\n';
  os << "initial: " << a.initial() << '\n';
  os << "finals:";
  for (State f : a.finals()) os << ' ' << f;
  os << '\n';
  for (Letter x = 0; x < a.letter_count(); ++x) {
    os << a.letter_name(x) << ':';
    for (State s : a.row(x)) os << ' ' << s;
    os << '\n';
  }
  return os.str();
}

std::string render_word(const Automaton& a, const Word& w) {
  std::string out;
  for (Letter x : w) out += a.letter_name(x);
  return out;
}

Word parse_word(const Automaton& a, std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    std::optional<Letter> best;
    std::size_t best_len = 0;
    for (Letter x = 0; x < a.letter_count(); ++x) {
      const auto& name = a.letter_name(x);
      if (name.size() > best_len && text.substr(i, name.size()) == name) {
        best = x;
        best_len = name.size();
      }
    }
    if (!best) throw ParseError(0, "word does not tokenize at offset " + std::to_string(i));
    w.push_back(*best);
    i += best_len;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Word semantics

State apply_word(const Automaton& a, State p, const Word& w) {
  for (Letter x : w) p = a.next(p, x);
  return p;
}

Transformation word_transform(const Automaton& a, const Word& w) {
  std::vector<State> images(a.state_count());
  for (State p = 0; p < a.state_count(); ++p) images[p] = apply_word(a, p, w);
  return Transformation(std::move(images));
}

std::vector<State> image_of_states(const Automaton& a, const Word& w) {
  return word_transform(a, w).image();
}

bool synchronizes(const Automaton& a, const Word& w) {
  return word_transform(a, w).is_constant();
}

// ---------------------------------------------------------------------------
// Structural predicates

bool is_permutation_letter(const Automaton& a, Letter x) {
  return a.letter_transform(x).is_permutation();
}

namespace {

bool is_circular_letter(const Automaton& a, Letter x) {
  State p = 0;
  for (std::size_t k = 1; k <= a.state_count(); ++k) {
    p = a.next(p, x);
    if (p == 0) return k == a.state_count();
  }
  return false;
}

// Marks every state reachable from `start` along `adj`.
std::vector<bool> reach(const std::vector<std::vector<State>>& adj,
                        const std::vector<State>& start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<State> stack;
  for (State s : start) {
    if (!seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    State u = stack.back();
    stack.pop_back();
    for (State v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<std::vector<State>> successors(const Automaton& a) {
  std::vector<std::vector<State>> adj(a.state_count());
  for (State p = 0; p < a.state_count(); ++p) {
    for (Letter x = 0; x < a.letter_count(); ++x) adj[p].push_back(a.next(p, x));
  }
  return adj;
}

std::vector<std::vector<State>> predecessors(const Automaton& a) {
  std::vector<std::vector<State>> adj(a.state_count());
  for (State p = 0; p < a.state_count(); ++p) {
    for (Letter x = 0; x < a.letter_count(); ++x) adj[a.next(p, x)].push_back(p);
  }
  return adj;
}

std::optional<State> first_unmarked(const std::vector<bool>& marks) {
  for (std::size_t p = 0; p < marks.size(); ++p) {
    if (!marks[p]) return static_cast<State>(p);
  }
  return std::nullopt;
}

// Cycle in the digraph restricted to states other than `removed`, found by
// iterative three-colour DFS. Empty when acyclic.
std::vector<State> find_cycle_avoiding(const Automaton& a, State removed) {
  enum : std::uint8_t { white, grey, black };
  const std::size_t n = a.state_count();
  std::vector<std::uint8_t> colour(n, white);
  colour[removed] = black;

  for (State root = 0; root < n; ++root) {
    if (colour[root] != white) continue;
    // (state, next letter to try)
    std::vector<std::pair<State, Letter>> stack{{root, 0}};
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [u, x] = stack.back();
      if (x == a.letter_count()) {
        colour[u] = black;
        stack.pop_back();
        continue;
      }
      State v = a.next(u, x++);
      if (colour[v] == grey) {
        std::vector<State> cycle{v};
        for (auto it = stack.rbegin(); it->first != v; ++it) cycle.push_back(it->first);
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (colour[v] == white) {
        colour[v] = grey;
        stack.emplace_back(v, 0);
      }
    }
  }
  return {};
}

}  // namespace

std::optional<Letter> circular_letter(const Automaton& a) {
  for (Letter x = 0; x < a.letter_count(); ++x) {
    if (is_circular_letter(a, x)) return x;
  }
  return std::nullopt;
}

std::vector<State> cyclic_ordering(const Automaton& a, Letter circ) {
  if (circ >= a.letter_count() || !is_circular_letter(a, circ)) {
    throw PreconditionError("letter is not a circular permutation");
  }
  std::vector<State> order;
  order.reserve(a.state_count());
  State p = a.initial();
  for (std::size_t k = 0; k < a.state_count(); ++k) {
    order.push_back(p);
    p = a.next(p, circ);
  }
  return order;
}

bool is_accessible(const Automaton& a) {
  return !first_unmarked(reach(successors(a), {a.initial()}));
}

bool is_coaccessible(const Automaton& a) {
  return !first_unmarked(reach(predecessors(a), a.finals()));
}

bool is_accessible_coaccessible(const Automaton& a) {
  return is_accessible(a) && is_coaccessible(a);
}

std::string_view to_string(SfaViolation v) {
  switch (v) {
    case SfaViolation::none: return "none";
    case SfaViolation::finals_not_initial: return "finals-not-initial";
    case SfaViolation::not_accessible: return "not-accessible";
    case SfaViolation::not_coaccessible: return "not-coaccessible";
    case SfaViolation::cycle_avoiding_initial: return "cycle-avoiding-initial";
  }
  return "unknown";
}

SemiFlowerDiagnosis is_semi_flower(const Automaton& a) {
  SemiFlowerDiagnosis d;
  if (a.finals().size() != 1 || a.finals().front() != a.initial()) {
    d.violation = SfaViolation::finals_not_initial;
    return d;
  }
  if (auto p = first_unmarked(reach(successors(a), {a.initial()}))) {
    d.violation = SfaViolation::not_accessible;
    d.offending_state = p;
    return d;
  }
  if (auto p = first_unmarked(reach(predecessors(a), a.finals()))) {
    d.violation = SfaViolation::not_coaccessible;
    d.offending_state = p;
    return d;
  }
  auto cycle = find_cycle_avoiding(a, a.initial());
  if (!cycle.empty()) {
    d.violation = SfaViolation::cycle_avoiding_initial;
    d.witness_cycle = std::move(cycle);
    return d;
  }
  d.holds = true;
  return d;
}

bool is_csfa(const Automaton& a) {
  return circular_letter(a).has_value() && is_semi_flower(a).holds;
}

UniquePermutationReport verify_unique_circular_permutation(const Automaton& a) {
  if (!is_semi_flower(a)) {
    throw PreconditionError("unique circular permutation check requires a semi-flower automaton");
  }
  UniquePermutationReport r;
  for (Letter x = 0; x < a.letter_count(); ++x) {
    if (!is_permutation_letter(a, x)) continue;
    if (!is_circular_letter(a, x)) r.non_circular.push_back(x);
    if (!r.permutation_letters.empty()) {
      auto first = a.row(r.permutation_letters.front());
      auto mine = a.row(x);
      if (!std::equal(first.begin(), first.end(), mine.begin())) r.mismatched.push_back(x);
    }
    r.permutation_letters.push_back(x);
  }
  return r;
}

}  // namespace csfa
