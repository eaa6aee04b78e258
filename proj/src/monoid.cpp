#include "csfa/monoid.hpp"

#include <algorithm>
#include <cstring>
#include <string_view>

#include "csfa/error.hpp"

namespace csfa {

namespace {

std::size_t hash_bytes(const std::uint8_t* p, std::size_t n) {
  return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(p), n));
}

}  // namespace

std::size_t MonoidClosure::Hash::operator()(std::uint32_t i) const noexcept {
  return hash_bytes(store->data(i), store->n);
}

std::size_t MonoidClosure::Hash::operator()(Key k) const noexcept {
  return hash_bytes(k.images, store->n);
}

bool MonoidClosure::Equal::operator()(std::uint32_t x, std::uint32_t y) const noexcept {
  return std::memcmp(store->data(x), store->data(y), store->n) == 0;
}

bool MonoidClosure::Equal::operator()(Key k, std::uint32_t y) const noexcept {
  return std::memcmp(k.images, store->data(y), store->n) == 0;
}

bool MonoidClosure::Equal::operator()(std::uint32_t x, Key k) const noexcept {
  return std::memcmp(store->data(x), k.images, store->n) == 0;
}

MonoidClosure::MonoidClosure(const Automaton& a, std::size_t cap)
    : store_(std::make_unique<Store>()),
      index_(0, Hash{store_.get()}, Equal{store_.get()}) {
  if (cap < 1) throw PreconditionError("monoid cap must be at least 1");
  const std::size_t n = a.state_count();
  if (n > 256) throw LimitError("monoid closure supports at most 256 states");
  store_->n = n;
  auto& arena = store_->arena;

  arena.resize(n);
  for (std::size_t p = 0; p < n; ++p) arena[p] = static_cast<Byte>(p);
  parent_.push_back(0);
  last_letter_.push_back(0);
  index_.insert(0);

  std::vector<Byte> candidate(n);
  for (std::size_t head = 0; head < parent_.size(); ++head) {
    for (Letter x = 0; x < a.letter_count(); ++x) {
      const Byte* src = store_->data(head);
      for (std::size_t p = 0; p < n; ++p) candidate[p] = static_cast<Byte>(a.next(src[p], x));
      if (index_.find(Key{candidate.data()}) != index_.end()) continue;
      if (parent_.size() >= cap) {
        truncated_ = true;
        return;
      }
      const auto slot = static_cast<std::uint32_t>(parent_.size());
      arena.insert(arena.end(), candidate.begin(), candidate.end());
      parent_.push_back(static_cast<std::uint32_t>(head));
      last_letter_.push_back(x);
      index_.insert(slot);
    }
  }
}

Transformation MonoidClosure::element(std::size_t i) const {
  const Byte* d = store_->data(i);
  return Transformation(std::vector<State>(d, d + store_->n));
}

Word MonoidClosure::witness(std::size_t i) const {
  Word w;
  while (i != 0) {
    w.push_back(last_letter_[i]);
    i = parent_[i];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::optional<std::size_t> MonoidClosure::find(const Transformation& t) const {
  const std::size_t n = store_->n;
  if (t.size() != n) return std::nullopt;
  std::vector<Byte> key(n);
  for (std::size_t p = 0; p < n; ++p) key[p] = static_cast<Byte>(t(static_cast<State>(p)));
  auto it = index_.find(Key{key.data()});
  if (it == index_.end()) return std::nullopt;
  return *it;
}

bool MonoidClosure::is_permutation(std::size_t i) const {
  const std::size_t n = store_->n;
  std::vector<bool> hit(n, false);
  const Byte* d = store_->data(i);
  for (std::size_t p = 0; p < n; ++p) {
    if (hit[d[p]]) return false;
    hit[d[p]] = true;
  }
  return true;
}

bool MonoidClosure::is_constant(std::size_t i) const {
  const Byte* d = store_->data(i);
  return std::all_of(d, d + store_->n, [&](Byte b) { return b == d[0]; });
}

MonoidClosure transition_monoid(const Automaton& a, std::size_t cap) {
  return MonoidClosure(a, cap);
}

std::optional<std::size_t> find_constant(const MonoidClosure& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.is_constant(i)) return i;
  }
  return std::nullopt;
}

std::optional<bool> has_constant(const MonoidClosure& m) {
  if (find_constant(m)) return true;
  if (m.truncated()) return std::nullopt;
  return false;
}

UnitsGroup group_of_units(const MonoidClosure& m) {
  if (m.truncated()) throw PreconditionError("group of units needs a complete closure");
  UnitsGroup g;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m.is_permutation(i)) continue;
    if (m.find(m.element(i).inverse())) g.elements.push_back(i);
  }
  g.order = g.elements.size();
  for (std::size_t i : g.elements) {
    const auto t = m.element(i);
    std::size_t order = 1;
    for (auto p = t; !p.is_identity(); p = p.then(t)) ++order;
    if (order == g.order) {
      g.cyclic_generator = i;
      break;
    }
  }
  return g;
}

RemarkReport verify_remark(const Automaton& a, std::size_t cap) {
  auto circ = circular_letter(a);
  if (!circ || !is_semi_flower(a)) {
    throw PreconditionError("units check requires a circular semi-flower automaton");
  }
  auto m = transition_monoid(a, cap);
  if (m.truncated()) {
    throw PreconditionError("transition monoid exceeds cap " + std::to_string(cap));
  }
  return verify_remark(a, m);
}

RemarkReport verify_remark(const Automaton& a, const MonoidClosure& m) {
  auto circ = circular_letter(a);
  if (!circ) throw PreconditionError("units check requires a circular automaton");
  auto units = group_of_units(m);

  RemarkReport r;
  r.state_count = a.state_count();
  r.monoid_size = m.size();
  r.units_order = units.order;

  std::vector<Transformation> powers;
  const auto c = a.letter_transform(*circ);
  auto p = Transformation::identity(a.state_count());
  do {
    powers.push_back(p);
    p = p.then(c);
  } while (!p.is_identity());
  std::vector<Transformation> unit_elements;
  for (std::size_t i : units.elements) unit_elements.push_back(m.element(i));
  std::sort(powers.begin(), powers.end());
  std::sort(unit_elements.begin(), unit_elements.end());
  r.generated_by_circular = powers == unit_elements;
  return r;
}

}  // namespace csfa
