#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

#include "csfa/automaton.hpp"

namespace csfa {

constexpr std::size_t default_monoid_cap = 1'000'000;

/// Breadth-first closure of the letter transformations under composition,
/// starting from the identity. Element 0 is the identity; element order is
/// BFS order, so every witness is a shortest word. Supports n <= 256.
class MonoidClosure {
 public:
  MonoidClosure(const Automaton& a, std::size_t cap);

  std::size_t size() const noexcept { return parent_.size(); }
  bool truncated() const noexcept { return truncated_; }
  std::size_t degree() const noexcept { return store_->n; }

  Transformation element(std::size_t i) const;
  /// Shortest word inducing element i (ties resolved by BFS discovery order).
  Word witness(std::size_t i) const;
  std::optional<std::size_t> find(const Transformation& t) const;

  bool is_permutation(std::size_t i) const;
  bool is_constant(std::size_t i) const;

 private:
  using Byte = std::uint8_t;

  // Element images, n bytes per element. Heap allocated so the hash functors
  // stay valid when the closure is moved.
  struct Store {
    std::size_t n = 0;
    std::vector<Byte> arena;
    const Byte* data(std::size_t i) const { return arena.data() + i * n; }
  };
  struct Key {
    const Byte* images;
  };
  struct Hash {
    using is_transparent = void;
    const Store* store;
    std::size_t operator()(std::uint32_t i) const noexcept;
    std::size_t operator()(Key k) const noexcept;
  };
  struct Equal {
    using is_transparent = void;
    const Store* store;
    bool operator()(std::uint32_t x, std::uint32_t y) const noexcept;
    bool operator()(Key k, std::uint32_t y) const noexcept;
    bool operator()(std::uint32_t x, Key k) const noexcept;
  };

  std::unique_ptr<Store> store_;
  std::vector<std::uint32_t> parent_;  // index of the element this one extends
  std::vector<Letter> last_letter_;
  std::unordered_set<std::uint32_t, Hash, Equal> index_;
  bool truncated_ = false;
};

/// Closure with the given element cap (`cap >= 1`).
MonoidClosure transition_monoid(const Automaton& a, std::size_t cap = default_monoid_cap);

/// Index of the first constant element. Empty means "none", which is a proof
/// of non-synchronization only when the closure is complete.
std::optional<std::size_t> find_constant(const MonoidClosure& m);

/// true/false on a complete closure; on a truncated one, true if a constant
/// was found and nullopt (indeterminate) otherwise.
std::optional<bool> has_constant(const MonoidClosure& m);

struct UnitsGroup {
  std::vector<std::size_t> elements;  // indices into the closure, BFS order
  std::size_t order = 0;
  std::optional<std::size_t> cyclic_generator;
};

/// Invertible elements of a complete closure. Throws `PreconditionError`
/// on a truncated closure.
UnitsGroup group_of_units(const MonoidClosure& m);

struct RemarkReport {
  std::size_t state_count = 0;
  std::size_t monoid_size = 0;
  std::size_t units_order = 0;
  /// Units coincide with the powers of the circular letter.
  bool generated_by_circular = false;

  bool holds() const noexcept {
    return units_order == state_count && generated_by_circular;
  }
};

/// On a circular semi-flower automaton the group of units is the cyclic group
/// of order n generated by the circular letter. Throws `PreconditionError`
/// when the input is not CSFA or the closure exceeds `cap`.
RemarkReport verify_remark(const Automaton& a, std::size_t cap = default_monoid_cap);
/// Same check against an already computed complete closure of `a`.
RemarkReport verify_remark(const Automaton& a, const MonoidClosure& m);

}  // namespace csfa
