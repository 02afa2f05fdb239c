#ifndef ATOMLOOP_CHECK_HPP
#define ATOMLOOP_CHECK_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "atomloop/network.hpp"
#include "atomloop/oracle.hpp"

namespace atomloop {

struct CheckResult {
  std::size_t engine_classes = 0;
  std::size_t oracle_classes = 0;
  std::size_t engine_loop_headers = 0;
  std::size_t oracle_loop_headers = 0;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline std::string id_list(const std::vector<RuleId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + std::to_string(ids[i]);
  return out + "}";
}

}  // namespace detail

// Compares a finished loop analysis with brute force: the header partition
// (container sets and class sizes) and the set of looping headers.
template <RuleSet S>
CheckResult check_against_oracle(const NetworkInstance<S>& net, const LoopAnalysis<S>& analysis) {
  const std::size_t bits = S::header_bits(net.geometry);
  const oracle::Classes truth = oracle::classes<S>(analysis.index.rule_sets, net.geometry);

  std::map<std::vector<RuleId>, Cardinal> engine;
  for (const Combination<S>& c : analysis.engine.store().combinations()) {
    std::vector<RuleId> cont = c.cont;
    std::sort(cont.begin(), cont.end());
    engine[cont] += c.atsize;
  }

  CheckResult result;
  result.engine_classes = analysis.engine.store().size();
  result.oracle_classes = truth.size();
  if (engine.size() != result.engine_classes) result.mismatches.push_back("engine: two combinations share a container set");

  for (const auto& [cont, headers] : truth) {
    auto it = engine.find(cont);
    if (it == engine.end()) {
      result.mismatches.push_back("class " + detail::id_list(cont) + ": oracle size " + std::to_string(headers.size()) +
                                  ", engine missing");
    } else if (it->second != headers.size()) {
      result.mismatches.push_back("class " + detail::id_list(cont) + ": oracle size " + std::to_string(headers.size()) +
                                  ", engine size " + to_decimal(it->second));
    }
  }
  for (const auto& [cont, size] : engine) {
    if (!truth.contains(cont)) {
      result.mismatches.push_back("class " + detail::id_list(cont) + ": engine size " + to_decimal(size) +
                                  ", oracle missing");
    }
  }

  std::set<std::vector<RuleId>> flagged;
  for (const LoopFinding& f : analysis.loops) flagged.insert(f.containers);
  std::vector<oracle::Header> engine_loops;
  for (const auto& [cont, headers] : truth) {
    if (flagged.contains(cont)) engine_loops.insert(engine_loops.end(), headers.begin(), headers.end());
  }
  std::sort(engine_loops.begin(), engine_loops.end());
  const std::vector<oracle::Header> oracle_loops = oracle::loops(net);
  result.engine_loop_headers = engine_loops.size();
  result.oracle_loop_headers = oracle_loops.size();

  std::vector<oracle::Header> only_engine;
  std::vector<oracle::Header> only_oracle;
  std::set_difference(engine_loops.begin(), engine_loops.end(), oracle_loops.begin(), oracle_loops.end(),
                      std::back_inserter(only_engine));
  std::set_difference(oracle_loops.begin(), oracle_loops.end(), engine_loops.begin(), engine_loops.end(),
                      std::back_inserter(only_oracle));
  for (oracle::Header h : only_engine) {
    result.mismatches.push_back("header " + oracle::header_text(h, bits) + ": engine loop, oracle none");
  }
  for (oracle::Header h : only_oracle) {
    result.mismatches.push_back("header " + oracle::header_text(h, bits) + ": oracle loop, engine none");
  }
  return result;
}

}  // namespace atomloop

#endif  // ATOMLOOP_CHECK_HPP
