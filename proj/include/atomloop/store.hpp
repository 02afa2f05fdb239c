#ifndef ATOMLOOP_STORE_HPP
#define ATOMLOOP_STORE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <ranges>
#include <vector>

#include "atomloop/cardinal.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/rule_set.hpp"

namespace atomloop {

// A combination (intersection of some rule sets) together with the atom
// bookkeeping the update algorithms maintain.
template <RuleSet S>
struct Combination {
  S set;
  CanonicalKey key;
  Cardinal size;    // |set|, cached
  Cardinal atsize;  // |a(c)|: elements of set lying in no non-container
  std::vector<Combination*> sup;  // stored combinations strictly containing set
  std::vector<RuleId> cont;       // rules containing set, in insertion order

  // Per-add scratch state; reset before add() returns.
  Combination* parent = nullptr;
  bool covered = false;
  bool is_new = false;
  bool in_incl = false;

  static Combination make(S s) {
    Combination c;
    c.key = canonical_key(s);
    c.size = cardinality(s);
    c.atsize = c.size;
    c.set = std::move(s);
    return c;
  }

  void clear_scratch() {
    parent = nullptr;
    covered = false;
    is_new = false;
    in_incl = false;
  }
};

// Combinations keyed by canonical key. Node-based, so Combination addresses
// stay valid across unrelated inserts and removals.
template <RuleSet S>
class CombinationStore {
 public:
  using Entry = Combination<S>;

  CombinationStore() = default;
  CombinationStore(const CombinationStore&) = delete;
  CombinationStore& operator=(const CombinationStore&) = delete;
  CombinationStore(CombinationStore&&) noexcept = default;
  CombinationStore& operator=(CombinationStore&&) noexcept = default;

  std::size_t size() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }

  bool contains(const S& s) const { return map_.contains(canonical_key(s)); }
  bool contains(const CanonicalKey& key) const { return map_.contains(key); }

  Entry* find(const CanonicalKey& key) {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }
  const Entry* find(const CanonicalKey& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }

  Entry& insert(Entry c) {
    auto [it, inserted] = map_.try_emplace(c.key, std::move(c));
    if (!inserted) throw StructuralError("combination " + format_ruleset(it->second.set) + " already stored");
    return it->second;
  }

  // Callers must first drop every sup reference to the removed entry.
  void remove(const CanonicalKey& key) {
    if (map_.erase(key) == 0) throw StructuralError("removing a combination that is not stored");
  }

  // Stored combinations meeting r, by non-decreasing cardinality then key.
  // Linear scan over the whole store.
  std::vector<Entry*> intersect_query(const S& r) {
    std::vector<Entry*> out;
    for (auto& [key, c] : map_) {
      if (intersect(c.set, r)) out.push_back(&c);
    }
    std::stable_sort(out.begin(), out.end(), SizeThenKey{});
    return out;
  }

  // Canonical-key order.
  auto combinations() { return map_ | std::views::values; }
  auto combinations() const { return map_ | std::views::values; }

 private:
  std::map<CanonicalKey, Entry> map_;
};

}  // namespace atomloop

#endif  // ATOMLOOP_STORE_HPP
