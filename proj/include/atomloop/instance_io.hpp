#ifndef ATOMLOOP_INSTANCE_IO_HPP
#define ATOMLOOP_INSTANCE_IO_HPP

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomloop/atoms.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/multi_range.hpp"
#include "atomloop/network.hpp"
#include "atomloop/wildcard.hpp"

// Instance files:
//
//   {"kind": "wildcard", "header_bits": 4,
//    "nodes": [{"id": "u", "rules": [{"match": "110*", "action": {"type": "drop"}},
//                                    {"match": "****", "action": {"type": "forward", "to": "u"}}]}]}
//
// Multi-range instances use "kind": "multirange", "field_widths": [w1, ...]
// and matches of the form [[a1, b1], ...].
namespace atomloop::io {

using json = nlohmann::json;
using AnyInstance = std::variant<NetworkInstance<Wildcard>, NetworkInstance<MultiRange>>;

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
  throw InputError(path + ": " + message);
}

inline const json& member(const json& obj, const std::string& path, const char* name) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) fail(path, std::string("missing \"") + name + "\"");
  return *it;
}

inline std::uint64_t unsigned_value(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

inline Wildcard parse_match(const json& v, const WildcardGeometry& g, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a wildcard string");
  try {
    return Wildcard::parse(v.get<std::string>(), g.bits);
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

inline MultiRange parse_match(const json& v, const MultiRangeGeometry& g, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of [lo, hi] pairs");
  std::vector<Interval> ranges;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != 2) fail(at, "expected a [lo, hi] pair");
    ranges.push_back({unsigned_value(v[i][0], at + "[0]"), unsigned_value(v[i][1], at + "[1]")});
  }
  try {
    return MultiRange::from_intervals(std::move(ranges), g);
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

inline Action parse_action(const json& v, const std::string& path) {
  const json& type = member(v, path, "type");
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "drop") return Action::drop();
  if (t == "deliver") return Action::deliver();
  if (t == "forward") {
    const json& to = member(v, path, "to");
    if (!to.is_string()) fail(path + ".to", "expected a node id string");
    return Action::forward(to.get<std::string>());
  }
  fail(path + ".type", "unknown action \"" + t + "\"");
}

template <class S>
NetworkInstance<S> parse_nodes(const json& doc, typename S::Geometry geometry) {
  NetworkInstance<S> net{std::move(geometry), {}};
  const json& nodes = member(doc, "$", "nodes");
  if (!nodes.is_array()) fail("$.nodes", "expected an array");
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const std::string path = "$.nodes[" + std::to_string(n) + "]";
    const json& id = member(nodes[n], path, "id");
    if (!id.is_string()) fail(path + ".id", "expected a string");
    auto [slot, inserted] = net.nodes.try_emplace(id.get<std::string>());
    if (!inserted) fail(path + ".id", "duplicate node id \"" + id.get<std::string>() + "\"");
    const json& rules = member(nodes[n], path, "rules");
    if (!rules.is_array()) fail(path + ".rules", "expected an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const std::string at = path + ".rules[" + std::to_string(i) + "]";
      S match = parse_match(member(rules[i], at, "match"), net.geometry, at + ".match");
      Action action = parse_action(member(rules[i], at, "action"), at + ".action");
      slot->second.push_back({std::move(match), std::move(action)});
    }
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const json& rules = nodes[n]["rules"];
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const json& action = rules[i]["action"];
      if (action["type"] == "forward" && !net.nodes.contains(action["to"].get<std::string>())) {
        fail("$.nodes[" + std::to_string(n) + "].rules[" + std::to_string(i) + "].action.to",
             "unknown node \"" + action["to"].get<std::string>() + "\"");
      }
    }
  }
  return net;
}

inline json action_json(const Action& a) {
  switch (a.type) {
    case ActionType::Drop: return {{"type", "drop"}};
    case ActionType::Deliver: return {{"type", "deliver"}};
    case ActionType::Forward: return {{"type", "forward"}, {"to", a.target}};
  }
  return {};
}

inline json match_json(const Wildcard& w) { return w.str(); }

inline json match_json(const MultiRange& r) {
  json out = json::array();
  for (const Interval& iv : r.intervals()) out.push_back({iv.lo, iv.hi});
  return out;
}

}  // namespace detail

inline AnyInstance parse_instance(const json& doc) {
  const json& kind = detail::member(doc, "$", "kind");
  if (kind == "wildcard") {
    const std::uint64_t bits = detail::unsigned_value(detail::member(doc, "$", "header_bits"), "$.header_bits");
    if (bits == 0) detail::fail("$.header_bits", "must be at least 1");
    return detail::parse_nodes<Wildcard>(doc, WildcardGeometry{bits});
  }
  if (kind == "multirange") {
    const json& widths = detail::member(doc, "$", "field_widths");
    if (!widths.is_array() || widths.empty()) detail::fail("$.field_widths", "expected a nonempty array");
    MultiRangeGeometry g;
    for (std::size_t i = 0; i < widths.size(); ++i) {
      const std::uint64_t w = detail::unsigned_value(widths[i], "$.field_widths[" + std::to_string(i) + "]");
      if (w == 0 || w > 64) detail::fail("$.field_widths[" + std::to_string(i) + "]", "width outside [1,64]");
      g.widths.push_back(static_cast<unsigned>(w));
    }
    return detail::parse_nodes<MultiRange>(doc, std::move(g));
  }
  detail::fail("$.kind", "expected \"wildcard\" or \"multirange\"");
}

inline AnyInstance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("$: malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

// "-" reads standard input.
inline AnyInstance load_instance(const std::string& path) {
  if (path == "-") {
    const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    return parse_instance_text(text);
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

template <class S>
json to_json(const NetworkInstance<S>& net) {
  json doc;
  if constexpr (std::is_same_v<S, Wildcard>) {
    doc["kind"] = "wildcard";
    doc["header_bits"] = net.geometry.bits;
  } else {
    doc["kind"] = "multirange";
    doc["field_widths"] = net.geometry.widths;
  }
  json nodes = json::array();
  for (const auto& [id, table] : net.nodes) {
    json rules = json::array();
    for (const ForwardingRule<S>& rule : table) {
      rules.push_back({{"match", detail::match_json(rule.match)}, {"action", detail::action_json(rule.action)}});
    }
    nodes.push_back({{"id", id}, {"rules", std::move(rules)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

inline json to_json(const AnyInstance& any) {
  return std::visit([](const auto& net) { return to_json(net); }, any);
}

// Report emitted by the `loops` command. Rationals are "p/q" strings and atom
// sizes decimal strings, so nothing passes through floating point.
template <RuleSet S>
json report_json(const LoopAnalysis<S>& analysis, const OverlapMetrics& m, double elapsed_ms) {
  json loops = json::array();
  for (const LoopFinding& f : analysis.loops) {
    loops.push_back({
        {"cycle", f.cycle},
        {"containers", f.containers},
        {"combination", f.combination},
        {"atom_size", to_decimal(f.atom_size)},
        {"witness", f.witness ? json(*f.witness) : json(nullptr)},
    });
  }
  return {
      {"atoms", m.m},
      {"distinct_rules", m.n},
      {"k", m.k},
      {"k_bar", m.k_bar.str()},
      {"K_bar", m.K_bar ? json(m.K_bar->str()) : json("unavailable")},
      {"loops", std::move(loops)},
      {"elapsed_ms", elapsed_ms},
  };
}

}  // namespace atomloop::io

#endif  // ATOMLOOP_INSTANCE_IO_HPP
