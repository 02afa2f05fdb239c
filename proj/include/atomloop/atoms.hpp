#ifndef ATOMLOOP_ATOMS_HPP
#define ATOMLOOP_ATOMS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "atomloop/cardinal.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/rule_set.hpp"
#include "atomloop/store.hpp"

namespace atomloop {

enum class Algorithm {
  Incremental,  // maintains sup/atsize across adds, touches only what meets r
  Basic,        // rebuilds the inclusion relation from scratch on every add
};

// Maintains the uncovered combinations UC(R) of a growing collection R of
// distinct rule sets. Each stored combination c represents exactly one atom
// a(c), the header class of elements contained in precisely the rules of
// c.cont.
template <RuleSet S>
class AtomEngine {
 public:
  using Geometry = typename S::Geometry;
  using Entry = Combination<S>;

  explicit AtomEngine(Geometry geometry) : geometry_(std::move(geometry)), universe_(S::full(geometry_)) {
    store_.insert(Entry::make(universe_));
  }

  AtomEngine(const AtomEngine&) = delete;
  AtomEngine& operator=(const AtomEngine&) = delete;
  AtomEngine(AtomEngine&&) noexcept = default;
  AtomEngine& operator=(AtomEngine&&) noexcept = default;

  // Adds r to R. A set already in R keeps its id and changes nothing.
  RuleId add(const S& r, Algorithm algo = Algorithm::Incremental) {
    if (!(r.geometry() == geometry_)) throw StructuralError("rule geometry differs from engine geometry");
    CanonicalKey key = canonical_key(r);
    if (auto it = rule_ids_.find(key); it != rule_ids_.end()) return it->second;
    const auto id = static_cast<RuleId>(rules_.size());
    rules_.push_back(r);
    rule_ids_.emplace(std::move(key), id);
    if (algo == Algorithm::Incremental) {
      add_incremental(r, id);
    } else {
      add_basic(r, id);
    }
    return id;
  }

  const CombinationStore<S>& store() const noexcept { return store_; }
  // Direct access; mutating it breaks the engine's invariants. Used by fault
  // injection in tests.
  CombinationStore<S>& store() noexcept { return store_; }

  const std::vector<S>& rules() const noexcept { return rules_; }
  const Geometry& geometry() const noexcept { return geometry_; }
  const S& universe() const noexcept { return universe_; }
  std::size_t atom_count() const noexcept { return store_.size(); }

  std::optional<RuleId> find_rule(const S& s) const {
    auto it = rule_ids_.find(canonical_key(s));
    if (it == rule_ids_.end()) return std::nullopt;
    return it->second;
  }

 private:
  void add_incremental(const S& r, RuleId id);
  void add_basic(const S& r, RuleId id);
  void erase_combinations(const std::vector<Entry*>& doomed, bool sweep_whole_store);

  Geometry geometry_;
  S universe_;
  CombinationStore<S> store_;
  std::vector<S> rules_;
  std::map<CanonicalKey, RuleId> rule_ids_;
};

namespace detail {

template <class Entry>
void dedupe(std::vector<Entry*>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

template <RuleSet S>
void AtomEngine<S>::add_incremental(const S& r, RuleId id) {
  std::vector<Entry*> incl;
  std::vector<Entry*> fresh;

  // Parent computation. Scanning by non-decreasing size makes the first
  // producer of c' = c ∩ r minimal; a second producer not containing that
  // parent means c' was already covered.
  for (Entry* c : store_.intersect_query(r)) {
    S meet = *intersect(c->set, r);
    Entry* target = store_.find(canonical_key(meet));
    if (target == nullptr || !target->in_incl) {
      if (target == nullptr) {
        target = &store_.insert(Entry::make(std::move(meet)));
        target->is_new = true;
        fresh.push_back(target);
      }
      target->parent = c;
      target->covered = false;
      target->in_incl = true;
      incl.push_back(target);
    } else if (!is_subset(target->parent->set, c->set)) {
      target->covered = true;
    }
  }

  std::erase_if(incl, [&](Entry* c) {
    if (!c->covered) return false;
    if (!c->is_new) throw StructuralError("pre-existing combination " + format_ruleset(c->set) + " marked covered");
    store_.remove(c->key);
    return true;
  });

  // Atom size computation, smallest first so every strict subset of c has
  // its final atsize before c is visited.
  std::sort(incl.begin(), incl.end(), SizeThenKey{});
  for (Entry* c : incl) {
    if (c->atsize == 0) continue;
    if (c->is_new) {
      checked_subtract(c->parent->atsize, c->atsize);
      c->sup.clear();
      c->sup.push_back(c->parent);
      c->sup.insert(c->sup.end(), c->parent->sup.begin(), c->parent->sup.end());
      c->cont = c->parent->cont;
    }
    const std::size_t before = c->sup.size();
    for (std::size_t i = 0; i < before; ++i) {
      std::optional<S> meet = intersect(c->sup[i]->set, r);
      if (!meet) continue;
      Entry* d = store_.find(canonical_key(*meet));
      if (d != nullptr && d->in_incl && d != c) c->sup.push_back(d);
    }
    detail::dedupe(c->sup);
    c->cont.push_back(id);
    for (Entry* d : c->sup) {
      if (d->is_new) checked_subtract(d->atsize, c->atsize);
    }
  }

  // Remove covered combinations.
  std::vector<Entry*> doomed;
  bool parent_removed = false;
  for (Entry* c : incl) {
    std::erase_if(c->sup, [](const Entry* d) { return d->atsize == 0; });
    if (c->atsize == 0) doomed.push_back(c);
    if (c->is_new && c->parent->atsize == 0) {
      doomed.push_back(c->parent);
      parent_removed = true;
    }
  }
  detail::dedupe(doomed);
  for (Entry* c : incl) c->clear_scratch();
  // A removed parent may still sit in sup lists of combinations outside r.
  erase_combinations(doomed, parent_removed);
}

template <RuleSet S>
void AtomEngine<S>::add_basic(const S& r, RuleId id) {
  std::vector<Entry*> all;
  for (Entry& c : store_.combinations()) all.push_back(&c);
  const std::size_t old_count = all.size();
  for (std::size_t i = 0; i < old_count; ++i) {
    std::optional<S> meet = intersect(all[i]->set, r);
    if (!meet || store_.contains(*meet)) continue;
    Entry& fresh = store_.insert(Entry::make(std::move(*meet)));
    fresh.is_new = true;
    all.push_back(&fresh);
  }

  for (Entry* c : all) {
    c->atsize = c->size;
    c->sup.clear();
    for (Entry* d : all) {
      if (d != c && is_subset(c->set, d->set)) c->sup.push_back(d);
    }
  }
  std::sort(all.begin(), all.end(), SizeThenKey{});
  for (Entry* c : all) {
    for (Entry* d : c->sup) checked_subtract(d->atsize, c->atsize);
  }

  for (Entry* c : all) {
    if (c->is_new) {
      c->cont.clear();
      for (RuleId i = 0; i < rules_.size(); ++i) {
        if (is_subset(c->set, rules_[i])) c->cont.push_back(i);
      }
    } else if (is_subset(c->set, r)) {
      c->cont.push_back(id);
    }
    c->clear_scratch();
  }

  std::vector<Entry*> doomed;
  for (Entry* c : all) {
    if (c->atsize == 0) doomed.push_back(c);
  }
  erase_combinations(doomed, true);
}

template <RuleSet S>
void AtomEngine<S>::erase_combinations(const std::vector<Entry*>& doomed, bool sweep_whole_store) {
  if (doomed.empty()) return;
  if (sweep_whole_store) {
    const std::unordered_set<const Entry*> gone(doomed.begin(), doomed.end());
    for (Entry& c : store_.combinations()) {
      std::erase_if(c.sup, [&](const Entry* d) { return gone.contains(d); });
    }
  }
  for (Entry* c : doomed) store_.remove(c->key);
}

// Folds add() over the distinct sets of `rules`, starting from UC = {H}.
// Rule ids follow first occurrence in `rules`.
template <RuleSet S>
AtomEngine<S> compute_uc(const typename S::Geometry& geometry, std::span<const S> rules,
                         Algorithm algo = Algorithm::Incremental) {
  AtomEngine<S> engine(geometry);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!(rules[i].geometry() == geometry)) {
      throw InputError("rule #" + std::to_string(i) + " (" + format_ruleset(rules[i]) +
                       ") does not match the instance header geometry");
    }
    engine.add(rules[i], algo);
  }
  return engine;
}

struct OverlapMetrics {
  std::size_t k = 0;                   // max containers of an atom
  Rational k_bar;                      // average containers per atom
  std::optional<Rational> K_bar;       // average combinations containing an atom
  std::size_t m = 0;                   // atoms
  std::size_t n = 0;                   // distinct rule sets
};

// Atoms with more containers than this skip the K̄ enumeration.
inline constexpr std::size_t kMaxContainersForKBar = 20;

// Number of distinct sets ∩T over T ⊆ containers (T = ∅ gives H). Built as
// the intersection closure of {H} under the containers, which yields the same
// collection as enumerating every subset.
template <RuleSet S>
std::size_t combinations_containing(const S& universe, std::span<const S> containers) {
  std::map<CanonicalKey, S> closure;
  closure.emplace(canonical_key(universe), universe);
  for (const S& r : containers) {
    std::vector<S> produced;
    for (const auto& [key, s] : closure) {
      if (std::optional<S> meet = intersect(s, r)) produced.push_back(std::move(*meet));
    }
    for (S& s : produced) {
      CanonicalKey key = canonical_key(s);
      closure.try_emplace(std::move(key), std::move(s));
    }
  }
  return closure.size();
}

template <RuleSet S>
OverlapMetrics metrics(const AtomEngine<S>& engine) {
  OverlapMetrics out;
  out.m = engine.atom_count();
  out.n = engine.rules().size();
  std::int64_t container_total = 0;
  std::int64_t combination_total = 0;
  bool gated = false;
  for (const Combination<S>& c : engine.store().combinations()) {
    out.k = std::max(out.k, c.cont.size());
    container_total += static_cast<std::int64_t>(c.cont.size());
    if (c.cont.size() > kMaxContainersForKBar) gated = true;
    if (gated) continue;
    std::vector<S> containers;
    containers.reserve(c.cont.size());
    for (RuleId id : c.cont) containers.push_back(engine.rules()[id]);
    combination_total += static_cast<std::int64_t>(combinations_containing<S>(engine.universe(), containers));
  }
  const auto m = static_cast<std::int64_t>(out.m);
  out.k_bar = Rational(container_total, m);
  if (!gated) out.K_bar = Rational(combination_total, m);
  return out;
}

// Cardinality form of weak completeness: for every pair of stored c, d that
// meet, |c ∩ d| equals the total atsize of stored combinations inside c ∩ d.
template <RuleSet S>
bool weak_completeness_check(const CombinationStore<S>& store) {
  std::vector<const Combination<S>*> all;
  for (const Combination<S>& c : store.combinations()) all.push_back(&c);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i; j < all.size(); ++j) {
      const std::optional<S> meet = intersect(all[i]->set, all[j]->set);
      if (!meet) continue;
      Cardinal covered = 0;
      for (const Combination<S>* e : all) {
        if (is_subset(e->set, *meet)) covered += e->atsize;
      }
      if (covered != cardinality(*meet)) return false;
    }
  }
  return true;
}

// Runtime checks of the structural properties a completed UC(R) must satisfy.
// Each returns an empty string on success, otherwise a description of the
// first violation.
namespace verify {

template <RuleSet S>
std::string partition(const AtomEngine<S>& engine) {
  Cardinal total = 0;
  for (const auto& c : engine.store().combinations()) {
    if (c.atsize <= 0) return "non-positive atsize on " + format_ruleset(c.set);
    total += c.atsize;
  }
  if (total != cardinality(engine.universe())) {
    return "atsizes sum to " + to_decimal(total) + ", header space has " + to_decimal(cardinality(engine.universe()));
  }
  return {};
}

// |d| = Σ atsize(c) over stored c ⊆ d, for every stored d.
template <RuleSet S>
std::string atom_decomposition(const AtomEngine<S>& engine) {
  for (const auto& d : engine.store().combinations()) {
    Cardinal total = 0;
    for (const auto& c : engine.store().combinations()) {
      if (is_subset(c.set, d.set)) total += c.atsize;
    }
    if (total != d.size) return "atoms under " + format_ruleset(d.set) + " sum to " + to_decimal(total);
  }
  return {};
}

// sup lists are exactly the strict supersets; cont lists are exactly the
// containing rules; cont is injective; set equals the intersection of cont.
template <RuleSet S>
std::string bookkeeping(const AtomEngine<S>& engine) {
  std::set<std::vector<RuleId>> seen;
  for (const auto& c : engine.store().combinations()) {
    std::set<const Combination<S>*> expected;
    for (const auto& d : engine.store().combinations()) {
      if (&d != &c && is_subset(c.set, d.set)) expected.insert(&d);
    }
    const std::set<const Combination<S>*> actual(c.sup.begin(), c.sup.end());
    if (actual.size() != c.sup.size()) return "duplicate sup entry on " + format_ruleset(c.set);
    if (actual != expected) return "sup list of " + format_ruleset(c.set) + " is not its strict supersets";

    std::vector<RuleId> containers;
    S meet = engine.universe();
    for (RuleId i = 0; i < engine.rules().size(); ++i) {
      if (is_subset(c.set, engine.rules()[i])) {
        containers.push_back(i);
        meet = *intersect(meet, engine.rules()[i]);
      }
    }
    std::vector<RuleId> cont = c.cont;
    std::sort(cont.begin(), cont.end());
    if (cont != containers) return "cont list of " + format_ruleset(c.set) + " is not its containers";
    if (!(meet == c.set)) return format_ruleset(c.set) + " is not the intersection of its containers";
    if (!seen.insert(cont).second) return "two combinations share container set";
    if (c.parent != nullptr || c.covered || c.is_new || c.in_incl) return "scratch state left on " + format_ruleset(c.set);
  }
  return {};
}

}  // namespace verify

}  // namespace atomloop

#endif  // ATOMLOOP_ATOMS_HPP
