#ifndef ATOMLOOP_COMMANDS_HPP
#define ATOMLOOP_COMMANDS_HPP

#include <chrono>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomloop/atoms.hpp"
#include "atomloop/check.hpp"
#include "atomloop/errors.hpp"
#include "atomloop/generators.hpp"
#include "atomloop/instance_io.hpp"
#include "atomloop/network.hpp"

// Subcommand bodies of the atomloop tool, separated from argument parsing so
// they can be driven directly from tests.
namespace atomloop::cli {

enum ExitCode : int {
  kOk = 0,
  kLoopFound = 1,
  kMismatch = 1,
  kInputError = 2,
};

// Runs `body`, mapping input errors to exit code 2 with the message on `err`.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

template <RuleSet S>
std::vector<S> distinct_rule_sets(const NetworkInstance<S>& net) {
  return build_rule_index(net).rule_sets;
}

// One header line "atoms <m>", then one line per uncovered combination in
// canonical-key order: set text, atom size, container ids (or "-").
inline int run_atoms(const io::AnyInstance& instance, Algorithm algo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::visit(
        [&](const auto& net) {
          using S = typename std::decay_t<decltype(net)>::rule_set_type;
          net.validate();
          const std::vector<S> rules = distinct_rule_sets(net);
          const AtomEngine<S> engine = compute_uc<S>(net.geometry, rules, algo);
          out << "atoms " << engine.atom_count() << '\n';
          for (const Combination<S>& c : engine.store().combinations()) {
            std::vector<RuleId> cont = c.cont;
            std::sort(cont.begin(), cont.end());
            std::string ids;
            for (RuleId id : cont) ids += (ids.empty() ? "" : ",") + std::to_string(id);
            out << format_ruleset(c.set) << '\t' << to_decimal(c.atsize) << '\t' << (ids.empty() ? "-" : ids) << '\n';
          }
        },
        instance);
    return kOk;
  });
}

inline nlohmann::json metrics_json(const OverlapMetrics& m) {
  return {
      {"atoms", m.m},
      {"distinct_rules", m.n},
      {"k", m.k},
      {"k_bar", m.k_bar.str()},
      {"K_bar", m.K_bar ? nlohmann::json(m.K_bar->str()) : nlohmann::json("unavailable")},
  };
}

inline int run_metrics(const io::AnyInstance& instance, Algorithm algo, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::visit(
        [&](const auto& net) {
          using S = typename std::decay_t<decltype(net)>::rule_set_type;
          net.validate();
          const std::vector<S> rules = distinct_rule_sets(net);
          const AtomEngine<S> engine = compute_uc<S>(net.geometry, rules, algo);
          out << metrics_json(metrics(engine)).dump(2) << '\n';
        },
        instance);
    return kOk;
  });
}

// Prints the JSON report; exit 1 when at least one class loops.
inline int run_loops(const io::AnyInstance& instance, const DetectOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    return std::visit(
        [&](const auto& net) {
          const auto start = std::chrono::steady_clock::now();
          const auto analysis = detect_loops(net, opts);
          const OverlapMetrics m = metrics(analysis.engine);
          const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
          out << io::report_json(analysis, m, elapsed.count()).dump(2) << '\n';
          return analysis.loops.empty() ? kOk : kLoopFound;
        },
        instance);
  });
}

enum class Fault {
  None,
  DropCombination,  // remove the first stored combination after the run
  DropLoops,        // forget every detected loop
};

struct CheckOptions {
  Algorithm algorithm = Algorithm::Incremental;
  Fault fault = Fault::None;  // negative controls for the checker itself
};

// Engine vs brute force. Exit 0 iff partitions and loop sets agree.
inline int run_check(const io::AnyInstance& instance, const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    return std::visit(
        [&](const auto& net) {
          using S = typename std::decay_t<decltype(net)>::rule_set_type;
          oracle::require_small(S::header_bits(net.geometry));
          DetectOptions detect;
          detect.algorithm = opts.algorithm;
          auto analysis = detect_loops(net, detect);
          if (opts.fault == Fault::DropCombination) {
            auto& store = analysis.engine.store();
            Combination<S>& victim = *store.combinations().begin();
            for (Combination<S>& c : store.combinations()) std::erase(c.sup, &victim);
            store.remove(victim.key);
          } else if (opts.fault == Fault::DropLoops) {
            analysis.loops.clear();
          }
          const CheckResult result = check_against_oracle(net, analysis);
          out << "classes: engine " << result.engine_classes << ", oracle " << result.oracle_classes << '\n';
          out << "loop headers: engine " << result.engine_loop_headers << ", oracle " << result.oracle_loop_headers
              << '\n';
          for (const std::string& line : result.mismatches) out << "mismatch: " << line << '\n';
          out << (result.ok() ? "OK" : "MISMATCH") << '\n';
          return result.ok() ? kOk : kMismatch;
        },
        instance);
  });
}

enum class Family { Fig2, Hsa, Veriflow, Random };

struct GenOptions {
  Family family = Family::Fig2;
  std::size_t ell = 4;
  // veriflow
  std::size_t d = 3;
  std::size_t p = 10;
  std::vector<std::uint64_t> breakpoints;  // empty: 1..p
  std::uint64_t b = 0;                      // 0: p+1
  unsigned width = 0;                       // 0: smallest that fits
  // random
  std::uint64_t seed = 1;
  std::size_t n = 10;
  std::string kind = "wildcard";
  double star_density = 0.5;
  std::vector<unsigned> widths{6, 6};
  std::size_t nodes = 3;
};

inline io::AnyInstance generate(const GenOptions& o) {
  switch (o.family) {
    case Family::Fig2:
      return gen::fig2_network();
    case Family::Hsa:
      return gen::hsa_hard(o.ell);
    case Family::Veriflow: {
      gen::VeriflowParams params = gen::veriflow_defaults(o.d, o.p);
      if (!o.breakpoints.empty()) params.breakpoints = o.breakpoints;
      if (o.b != 0) params.b = o.b;
      if (o.width != 0) params.width = o.width;
      return gen::veriflow_hard(params);
    }
    case Family::Random:
      if (o.kind == "wildcard") {
        if (o.ell == 0) throw InputError("random wildcard instance needs ell >= 1");
        const auto rules = gen::random_wildcards(o.seed, o.n, o.ell, o.star_density);
        return gen::random_network(o.seed, rules, WildcardGeometry{o.ell}, o.nodes);
      }
      if (o.kind == "multirange") {
        const MultiRangeGeometry g{o.widths};
        const auto rules = gen::random_multiranges(o.seed, o.n, g);
        return gen::random_network(o.seed, rules, g, o.nodes);
      }
      throw InputError("unknown kind \"" + o.kind + "\" (expected wildcard or multirange)");
  }
  throw InputError("unknown family");
}

inline int run_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << io::to_json(generate(opts)).dump(2) << '\n';
    return kOk;
  });
}

}  // namespace atomloop::cli

#endif  // ATOMLOOP_COMMANDS_HPP
