#ifndef ATOMLOOP_ORACLE_HPP
#define ATOMLOOP_ORACLE_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "atomloop/errors.hpp"
#include "atomloop/multi_range.hpp"
#include "atomloop/network.hpp"
#include "atomloop/wildcard.hpp"

// Brute force over every header of a small header space. Only single-header
// membership is used here; nothing goes through intersect/cardinality.
namespace atomloop::oracle {

inline constexpr std::size_t kMaxBits = 22;

// Header as an integer whose binary form (ℓ bits, most significant first) is
// the header string.
using Header = std::uint32_t;

// Container rule ids (ascending) → headers having exactly those containers.
using Classes = std::map<std::vector<RuleId>, std::vector<Header>>;

inline void require_small(std::size_t bits) {
  if (bits > kMaxBits) {
    throw InputError("brute force refused: " + std::to_string(bits) + "-bit headers exceed the " +
                     std::to_string(kMaxBits) + "-bit limit");
  }
}

inline bool matches(const Wildcard& rule, Header h) {
  const std::size_t bits = rule.length();
  for (std::size_t i = 0; i < bits; ++i) {
    const bool bit = (h >> (bits - 1 - i)) & 1U;
    switch (rule.letter(i)) {
      case Wildcard::Letter::Zero:
        if (bit) return false;
        break;
      case Wildcard::Letter::One:
        if (!bit) return false;
        break;
      case Wildcard::Letter::Star:
        break;
    }
  }
  return true;
}

inline bool matches(const MultiRange& rule, Header h) {
  const auto widths = rule.geometry().widths;
  std::size_t shift = rule.geometry().total_bits();
  for (std::size_t f = 0; f < widths.size(); ++f) {
    shift -= widths[f];
    const std::uint64_t value = (static_cast<std::uint64_t>(h) >> shift) & ((std::uint64_t{1} << widths[f]) - 1);
    if (value < rule.intervals()[f].lo || value > rule.intervals()[f].hi) return false;
  }
  return true;
}

inline std::string header_text(Header h, std::size_t bits) {
  std::string out(bits, '0');
  for (std::size_t i = 0; i < bits; ++i) {
    if ((h >> (bits - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

template <class S>
Classes classes(std::span<const S> rules, const typename S::Geometry& geometry) {
  const std::size_t bits = S::header_bits(geometry);
  require_small(bits);
  Classes out;
  const std::uint64_t count = std::uint64_t{1} << bits;
  std::vector<RuleId> containers;
  for (std::uint64_t x = 0; x < count; ++x) {
    const auto h = static_cast<Header>(x);
    containers.clear();
    for (RuleId id = 0; id < rules.size(); ++id) {
      if (matches(rules[id], h)) containers.push_back(id);
    }
    out[containers].push_back(h);
  }
  return out;
}

// First-match table lookup at every node.
template <class S>
std::vector<std::size_t> successors(const NetworkInstance<S>& net, const std::map<std::string, std::size_t>& number,
                                    Header h) {
  std::vector<std::size_t> succ;
  for (const auto& [id, table] : net.nodes) {
    std::size_t next = kNoNode;
    for (const ForwardingRule<S>& rule : table) {
      if (!matches(rule.match, h)) continue;
      if (rule.action.type == ActionType::Forward) next = number.at(rule.action.target);
      break;
    }
    succ.push_back(next);
  }
  return succ;
}

// Headers whose forwarding graph contains a directed cycle, ascending.
// With out-degree at most one, a walk that survives n steps must have
// revisited a node.
template <class S>
std::vector<Header> loops(const NetworkInstance<S>& net) {
  const std::size_t bits = S::header_bits(net.geometry);
  require_small(bits);
  std::map<std::string, std::size_t> number;
  for (const auto& [id, table] : net.nodes) number.emplace(id, number.size());
  const std::size_t n = number.size();

  std::vector<Header> out;
  const std::uint64_t count = std::uint64_t{1} << bits;
  for (std::uint64_t x = 0; x < count; ++x) {
    const auto h = static_cast<Header>(x);
    const std::vector<std::size_t> succ = successors(net, number, h);
    bool looping = false;
    for (std::size_t start = 0; start < n && !looping; ++start) {
      std::size_t u = start;
      std::size_t steps = 0;
      while (u != kNoNode && steps < n) {
        u = succ[u];
        ++steps;
      }
      looping = u != kNoNode;
    }
    if (looping) out.push_back(h);
  }
  return out;
}

}  // namespace atomloop::oracle

#endif  // ATOMLOOP_ORACLE_HPP
