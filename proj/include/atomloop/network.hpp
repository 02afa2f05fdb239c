#ifndef ATOMLOOP_NETWORK_HPP
#define ATOMLOOP_NETWORK_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "atomloop/atoms.hpp"
#include "atomloop/cardinal.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/rule_set.hpp"

namespace atomloop {

enum class ActionType { Drop, Deliver, Forward };

struct Action {
  ActionType type = ActionType::Drop;
  std::string target;  // node id, Forward only

  static Action drop() { return {ActionType::Drop, {}}; }
  static Action deliver() { return {ActionType::Deliver, {}}; }
  static Action forward(std::string to) { return {ActionType::Forward, std::move(to)}; }

  friend bool operator==(const Action&, const Action&) = default;
};

template <RuleSet S>
struct ForwardingRule {
  S match;
  Action action;

  friend bool operator==(const ForwardingRule&, const ForwardingRule&) = default;
};

// One forwarding table per node; table order is priority order. Nodes are
// kept sorted by id, which fixes node numbering everywhere else.
template <RuleSet S>
struct NetworkInstance {
  using rule_set_type = S;

  typename S::Geometry geometry;
  std::map<std::string, std::vector<ForwardingRule<S>>> nodes;

  void validate() const {
    S::full(geometry);
    for (const auto& [id, table] : nodes) {
      for (std::size_t i = 0; i < table.size(); ++i) {
        const std::string where = "node '" + id + "' rule " + std::to_string(i);
        if (!(table[i].match.geometry() == geometry)) throw InputError(where + ": match does not fit the header geometry");
        if (table[i].action.type == ActionType::Forward && !nodes.contains(table[i].action.target)) {
          throw InputError(where + ": forward target '" + table[i].action.target + "' is not a declared node");
        }
      }
    }
  }

  std::vector<std::string> node_ids() const {
    std::vector<std::string> ids;
    for (const auto& [id, table] : nodes) ids.push_back(id);
    return ids;
  }

  friend bool operator==(const NetworkInstance&, const NetworkInstance&) = default;
};

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct RuleOccurrence {
  std::size_t node = 0;
  std::size_t table_index = 0;
  ActionType type = ActionType::Drop;
  std::size_t target = kNoNode;

  friend bool operator==(const RuleOccurrence&, const RuleOccurrence&) = default;
};

// Distinct rule sets of a network, each with the list of table entries using
// it, sorted by node then table index.
template <RuleSet S>
struct RuleIndex {
  std::vector<std::string> node_ids;
  std::vector<S> rule_sets;
  std::vector<std::vector<RuleOccurrence>> occurrences;
};

// Rule ids follow first occurrence, scanning nodes in id order and each table
// top to bottom.
template <RuleSet S>
RuleIndex<S> build_rule_index(const NetworkInstance<S>& net) {
  RuleIndex<S> index;
  index.node_ids = net.node_ids();
  std::map<std::string, std::size_t> node_number;
  for (std::size_t i = 0; i < index.node_ids.size(); ++i) node_number[index.node_ids[i]] = i;

  std::map<CanonicalKey, RuleId> ids;
  std::size_t node = 0;
  for (const auto& [name, table] : net.nodes) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      const ForwardingRule<S>& rule = table[i];
      auto [it, inserted] = ids.try_emplace(canonical_key(rule.match), static_cast<RuleId>(index.rule_sets.size()));
      if (inserted) {
        index.rule_sets.push_back(rule.match);
        index.occurrences.emplace_back();
      }
      RuleOccurrence occ{node, i, rule.action.type, kNoNode};
      if (rule.action.type == ActionType::Forward) {
        auto target = node_number.find(rule.action.target);
        if (target == node_number.end()) throw InputError("forward target '" + rule.action.target + "' is not a declared node");
        occ.target = target->second;
      }
      index.occurrences[it->second].push_back(occ);
    }
    ++node;
  }
  return index;
}

// successor[u] is the node u forwards to, or nullopt when u drops/delivers.
using SuccessorGraph = std::vector<std::optional<std::size_t>>;

// Forwarding graph shared by every header of the atom whose containers are
// `containers`: at each node the matching entry with the smallest table index
// wins.
template <RuleSet S>
SuccessorGraph forwarding_graph(std::span<const RuleId> containers, const RuleIndex<S>& index) {
  const std::size_t n = index.node_ids.size();
  std::vector<const RuleOccurrence*> winner(n, nullptr);
  for (RuleId id : containers) {
    for (const RuleOccurrence& occ : index.occurrences[id]) {
      const RuleOccurrence*& w = winner[occ.node];
      if (w == nullptr || occ.table_index < w->table_index) w = &occ;
    }
  }
  SuccessorGraph graph(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (winner[u] != nullptr && winner[u]->type == ActionType::Forward) graph[u] = winner[u]->target;
  }
  return graph;
}

// Pointer chasing with per-start visit stamps. Start nodes are tried in
// increasing order; the returned cycle begins at the first repeated node.
inline std::optional<std::vector<std::size_t>> has_cycle(const SuccessorGraph& graph) {
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> stamp(graph.size(), unvisited);
  for (std::size_t start = 0; start < graph.size(); ++start) {
    if (stamp[start] != unvisited) continue;
    std::size_t u = start;
    while (true) {
      stamp[u] = start;
      if (!graph[u]) break;
      const std::size_t v = *graph[u];
      if (stamp[v] == start) {
        std::vector<std::size_t> cycle{v};
        for (std::size_t w = *graph[v]; w != v; w = *graph[w]) cycle.push_back(w);
        return cycle;
      }
      if (stamp[v] != unvisited) break;
      u = v;
    }
  }
  return std::nullopt;
}

inline constexpr std::uint64_t kWitnessCap = std::uint64_t{1} << 20;

// First element of `combination` (in canonical order) outside every
// non-container, looking at no more than `cap` candidates.
template <RuleSet S>
std::optional<std::string> witness_header(const S& combination, std::span<const S> non_containers,
                                          std::uint64_t cap = kWitnessCap) {
  auto outside_all = [&](const S& singleton) {
    return std::none_of(non_containers.begin(), non_containers.end(),
                        [&](const S& r) { return is_subset(singleton, r); });
  };
  std::optional<S> found = find_element(combination, cap, outside_all);
  if (!found) return std::nullopt;
  return header_string(*found);
}

struct LoopFinding {
  std::vector<RuleId> containers;
  std::string combination;
  Cardinal atom_size;
  std::vector<std::string> cycle;
  std::optional<std::string> witness;
};

struct DetectOptions {
  Algorithm algorithm = Algorithm::Incremental;
  bool first_only = false;
  bool witness = false;
  unsigned jobs = 1;
  std::uint64_t witness_cap = kWitnessCap;
};

template <RuleSet S>
struct LoopAnalysis {
  RuleIndex<S> index;
  AtomEngine<S> engine;
  std::vector<LoopFinding> loops;  // combination canonical-key order
};

template <RuleSet S>
std::optional<LoopFinding> examine_atom(const Combination<S>& c, const RuleIndex<S>& index, const DetectOptions& opts) {
  const SuccessorGraph graph = forwarding_graph<S>(c.cont, index);
  std::optional<std::vector<std::size_t>> cycle = has_cycle(graph);
  if (!cycle) return std::nullopt;

  LoopFinding f;
  f.containers = c.cont;
  std::sort(f.containers.begin(), f.containers.end());
  f.combination = format_ruleset(c.set);
  f.atom_size = c.atsize;
  for (std::size_t u : *cycle) f.cycle.push_back(index.node_ids[u]);
  if (opts.witness) {
    std::vector<S> non_containers;
    for (RuleId id = 0; id < index.rule_sets.size(); ++id) {
      if (!std::binary_search(f.containers.begin(), f.containers.end(), id)) non_containers.push_back(index.rule_sets[id]);
    }
    f.witness = witness_header<S>(c.set, non_containers, opts.witness_cap);
  }
  return f;
}

// Computes the header classes of all rule sets in the network, then checks
// each class's forwarding graph for a cycle.
template <RuleSet S>
LoopAnalysis<S> detect_loops(const NetworkInstance<S>& net, const DetectOptions& opts = {}) {
  net.validate();
  RuleIndex<S> index = build_rule_index(net);
  AtomEngine<S> engine = compute_uc<S>(net.geometry, index.rule_sets, opts.algorithm);

  std::vector<const Combination<S>*> atoms;
  for (const Combination<S>& c : engine.store().combinations()) atoms.push_back(&c);

  std::vector<std::optional<LoopFinding>> found(atoms.size());
  const unsigned jobs = std::max(1U, opts.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      found[i] = examine_atom(*atoms[i], index, opts);
      if (found[i] && opts.first_only) break;
    }
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < atoms.size(); i += jobs) found[i] = examine_atom(*atoms[i], index, opts);
      });
    }
    for (std::thread& t : workers) t.join();
  }

  std::vector<LoopFinding> loops;
  for (auto& f : found) {
    if (!f) continue;
    loops.push_back(std::move(*f));
    if (opts.first_only) break;
  }
  return LoopAnalysis<S>{std::move(index), std::move(engine), std::move(loops)};
}

}  // namespace atomloop

#endif  // ATOMLOOP_NETWORK_HPP
