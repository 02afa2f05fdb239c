#ifndef ATOMLOOP_RULE_SET_HPP
#define ATOMLOOP_RULE_SET_HPP

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "atomloop/cardinal.hpp"

namespace atomloop {

// Flat lexicographic key. Two keys of the same representation kind compare
// equal exactly when they denote the same set.
struct CanonicalKey {
  std::vector<std::uint64_t> parts;

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend std::strong_ordering operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

using RuleId = std::uint32_t;

// A predicate representation closed under intersection whose cardinality is
// cheap to compute. Emptiness is never represented: intersect() returns
// nullopt instead.
template <class S>
concept RuleSet = std::regular<S> && requires(const S& a, const S& b, const typename S::Geometry& g) {
  typename S::Geometry;
  { a.geometry() } -> std::convertible_to<typename S::Geometry>;
  { S::full(g) } -> std::same_as<S>;
  { S::header_bits(g) } -> std::convertible_to<std::size_t>;
  { intersect(a, b) } -> std::same_as<std::optional<S>>;
  { cardinality(a) } -> std::same_as<Cardinal>;
  { is_subset(a, b) } -> std::same_as<bool>;
  { canonical_key(a) } -> std::same_as<CanonicalKey>;
  { format_ruleset(a) } -> std::same_as<std::string>;
  { header_string(a) } -> std::same_as<std::string>;
};

// s ⊆ t  ⇔  |s ∩ t| = |s|. Representation-independent reference used to
// validate the letterwise/intervalwise shortcuts.
template <RuleSet S>
bool subset_by_cardinality(const S& s, const S& t) {
  const std::optional<S> meet = intersect(s, t);
  return meet && cardinality(*meet) == cardinality(s);
}

// Ordering used by every "non-decreasing cardinality" scan: size first,
// canonical key to break ties.
struct SizeThenKey {
  template <class C>
  bool operator()(const C* a, const C* b) const {
    if (a->size != b->size) return a->size < b->size;
    return a->key < b->key;
  }
};

}  // namespace atomloop

#endif  // ATOMLOOP_RULE_SET_HPP
