#ifndef ATOMLOOP_TESTS_TEST_SUPPORT_HPP
#define ATOMLOOP_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "atomloop/atoms.hpp"
#include "atomloop/multi_range.hpp"
#include "atomloop/wildcard.hpp"

namespace atomloop::test {

inline Wildcard wc(const std::string& text) { return Wildcard::parse(text, text.size()); }

inline MultiRange mr(const std::string& text, std::vector<unsigned> widths) {
  return MultiRange::parse(text, MultiRangeGeometry{std::move(widths)});
}

struct StoredAtom {
  Cardinal atsize;
  std::vector<RuleId> cont;

  friend bool operator==(const StoredAtom&, const StoredAtom&) = default;
};

// Store contents keyed by set text, with cont sorted. Two engines agree when
// these snapshots compare equal.
template <RuleSet S>
std::map<std::string, StoredAtom> snapshot(const AtomEngine<S>& engine) {
  std::map<std::string, StoredAtom> out;
  for (const auto& c : engine.store().combinations()) {
    std::vector<RuleId> cont = c.cont;
    std::sort(cont.begin(), cont.end());
    out[format_ruleset(c.set)] = {c.atsize, cont};
  }
  return out;
}

// Same, but containers expressed as set texts so that different rule id
// assignments (insertion orders) can be compared.
template <RuleSet S>
std::map<std::string, std::pair<Cardinal, std::vector<std::string>>> snapshot_by_text(const AtomEngine<S>& engine) {
  std::map<std::string, std::pair<Cardinal, std::vector<std::string>>> out;
  for (const auto& c : engine.store().combinations()) {
    std::vector<std::string> cont;
    for (RuleId id : c.cont) cont.push_back(format_ruleset(engine.rules()[id]));
    std::sort(cont.begin(), cont.end());
    out[format_ruleset(c.set)] = {c.atsize, cont};
  }
  return out;
}

}  // namespace atomloop::test

#endif  // ATOMLOOP_TESTS_TEST_SUPPORT_HPP
