#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace csfa {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A word over the alphabet as a sequence of letter indices; empty is epsilon.
using Word = std::vector<Letter>;

/// `letter` repeated `count` times.
Word power(Letter letter, std::size_t count);

/// A total self-map of {0, ..., n-1}. Composition reads left to right:
/// `x.then(y)` maps p to y(x(p)), matching the action of the word xy.
class Transformation {
 public:
  Transformation() = default;
  explicit Transformation(std::vector<State> images);

  static Transformation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  State operator()(State p) const { return images_[p]; }
  std::span<const State> images() const noexcept { return images_; }

  Transformation then(const Transformation& next) const;

  bool is_identity() const;
  bool is_permutation() const;
  bool is_constant() const;
  /// Number of distinct image points.
  std::size_t rank() const;
  /// Sorted image of the whole domain.
  std::vector<State> image() const;

  /// Inverse of a permutation. Precondition: `is_permutation()`.
  Transformation inverse() const;

  /// Lengths of the cycles of a permutation, in order of their least element.
  std::vector<std::size_t> cycle_type() const;

  friend bool operator==(const Transformation&, const Transformation&) = default;
  friend auto operator<=>(const Transformation&, const Transformation&) = default;

 private:
  std::vector<State> images_;
};

/// Complete deterministic automaton (Q, A, delta, q0, F) with Q = {0, ..., n-1}.
/// Immutable once constructed; the constructor enforces every invariant and
/// throws `std::invalid_argument` on violation.
class Automaton {
 public:
  /// `rows[x][p]` is the image of state p under letter x.
  Automaton(std::size_t n, std::vector<std::string> alphabet,
            std::vector<std::vector<State>> rows, State initial,
            std::vector<State> finals);

  std::size_t state_count() const noexcept { return n_; }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::string& letter_name(Letter x) const { return alphabet_.at(x); }
  std::optional<Letter> find_letter(std::string_view name) const;

  State initial() const noexcept { return initial_; }
  /// Sorted, duplicate free.
  const std::vector<State>& finals() const noexcept { return finals_; }
  bool is_final(State p) const;

  State next(State p, Letter x) const { return delta_[x * n_ + p]; }
  std::span<const State> row(Letter x) const {
    return {delta_.data() + x * n_, n_};
  }
  Transformation letter_transform(Letter x) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::size_t n_;
  std::vector<std::string> alphabet_;
  std::vector<State> delta_;  // letter-major: delta_[x * n + p]
  State initial_;
  std::vector<State> finals_;
};

/// Reads the line-oriented automaton text format. Throws `ParseError`.
Automaton parse_automaton(std::string_view text);

/// Writes the canonical text form; `parse_automaton` inverts it exactly.
std::string serialize_automaton(const Automaton& a);

/// Concatenated letter names.
std::string render_word(const Automaton& a, const Word& w);

/// Splits a concatenation of letter names, longest name first. Throws
/// `ParseError` (line 0) if the text does not tokenize.
Word parse_word(const Automaton& a, std::string_view text);

State apply_word(const Automaton& a, State p, const Word& w);
Transformation word_transform(const Automaton& a, const Word& w);

/// Image of the full state set under `w`, sorted.
std::vector<State> image_of_states(const Automaton& a, const Word& w);

/// True iff `w` maps every state to one common state.
bool synchronizes(const Automaton& a, const Word& w);

bool is_permutation_letter(const Automaton& a, Letter x);

/// First letter, in alphabet order, acting as a single n-cycle.
std::optional<Letter> circular_letter(const Automaton& a);

/// q0, q0.c, q0.c^2, ... for a circular letter c. Throws `PreconditionError`
/// when `circ` is not circular.
std::vector<State> cyclic_ordering(const Automaton& a, Letter circ);

bool is_accessible(const Automaton& a);
bool is_coaccessible(const Automaton& a);
bool is_accessible_coaccessible(const Automaton& a);

enum class SfaViolation {
  none,
  finals_not_initial,  // F != {q0}
  not_accessible,
  not_coaccessible,
  cycle_avoiding_initial,
};

std::string_view to_string(SfaViolation v);

struct SemiFlowerDiagnosis {
  bool holds = false;
  SfaViolation violation = SfaViolation::none;
  /// First state failing accessibility or co-accessibility.
  std::optional<State> offending_state;
  /// For `cycle_avoiding_initial`: a closed walk s0 -> s1 -> ... -> s0 with
  /// distinct states, none equal to q0. A self-loop is a 1-element cycle.
  std::vector<State> witness_cycle;

  explicit operator bool() const noexcept { return holds; }
};

/// Semi-flower test: F = {q0}, trim, and every cycle passes through q0
/// (equivalently, the digraph with q0 deleted is acyclic).
SemiFlowerDiagnosis is_semi_flower(const Automaton& a);

/// Semi-flower and circular.
bool is_csfa(const Automaton& a);

struct UniquePermutationReport {
  std::vector<Letter> permutation_letters;
  /// Permutation letters that are not a single n-cycle.
  std::vector<Letter> non_circular;
  /// Permutation letters whose transformation differs from the first one.
  std::vector<Letter> mismatched;

  bool holds() const noexcept { return non_circular.empty() && mismatched.empty(); }
};

/// On a semi-flower automaton every permutation letter is circular and all
/// permutation letters coincide. Throws `PreconditionError` on non-SFA input.
UniquePermutationReport verify_unique_circular_permutation(const Automaton& a);

}  // namespace csfa
