#ifndef ATOMLOOP_GENERATORS_HPP
#define ATOMLOOP_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "atomloop/errors.hpp"
#include "atomloop/multi_range.hpp"
#include "atomloop/network.hpp"
#include "atomloop/wildcard.hpp"

namespace atomloop::gen {

// Eight-element toy space {0..7} as one 3-bit field:
// r1=[0,4], r2=[1,5], r3=[2,6], r4=[3,3].
inline MultiRangeGeometry fig2_geometry() { return MultiRangeGeometry{{3}}; }

inline std::vector<MultiRange> fig2_rules() {
  const MultiRangeGeometry g = fig2_geometry();
  return {
      MultiRange::from_intervals({{0, 4}}, g),
      MultiRange::from_intervals({{1, 5}}, g),
      MultiRange::from_intervals({{2, 6}}, g),
      MultiRange::from_intervals({{3, 3}}, g),
  };
}

// The toy rules as a one-node network that drops everything it matches.
inline NetworkInstance<MultiRange> fig2_network() {
  NetworkInstance<MultiRange> net{fig2_geometry(), {}};
  auto& table = net.nodes["n0"];
  for (const MultiRange& r : fig2_rules()) table.push_back({r, Action::drop()});
  return net;
}

// Drop rules 1^ℓ and 1^(ℓ-i) 0 *^(i-1) for i = 1..ℓ, then *^ℓ forwarding back
// to the node itself. The drop rules partition the header space, so the
// table has no loop, yet proving it by complementing wildcards blows up.
inline NetworkInstance<Wildcard> hsa_hard(std::size_t ell, const std::string& node = "u") {
  if (ell == 0) throw InputError("hsa instance needs ell >= 1");
  NetworkInstance<Wildcard> net{WildcardGeometry{ell}, {}};
  auto& table = net.nodes[node];
  table.push_back({Wildcard::parse(std::string(ell, '1'), ell), Action::drop()});
  for (std::size_t i = 1; i <= ell; ++i) {
    const std::string text = std::string(ell - i, '1') + '0' + std::string(i - 1, '*');
    table.push_back({Wildcard::parse(text, ell), Action::drop()});
  }
  table.push_back({Wildcard::full(WildcardGeometry{ell}), Action::forward(node)});
  return net;
}

struct VeriflowParams {
  std::size_t d = 3;
  std::vector<std::uint64_t> breakpoints;  // a_1 < … < a_p
  std::uint64_t b = 0;
  unsigned width = 4;  // every field
};

// Smallest uniform field width holding breakpoints 1..p and b = p+1.
inline unsigned veriflow_default_width(std::size_t p) {
  unsigned w = 1;
  while ((std::uint64_t{1} << w) < p + 2) ++w;
  return w;
}

inline VeriflowParams veriflow_defaults(std::size_t d, std::size_t p) {
  VeriflowParams params;
  params.d = d;
  for (std::size_t j = 1; j <= p; ++j) params.breakpoints.push_back(j);
  params.b = p + 1;
  params.width = veriflow_default_width(p);
  return params;
}

// Drop rules H_{1..i-1} × [a_j,a_j] × [b,b]^{d-i} for i = 1..d, j = 1..p,
// then the full space forwarding to the node itself: n = dp + 1 rules, all
// drop rules pairwise disjoint.
inline NetworkInstance<MultiRange> veriflow_hard(const VeriflowParams& params, const std::string& node = "u") {
  if (params.d == 0) throw InputError("veriflow instance needs d >= 1");
  if (params.breakpoints.empty()) throw InputError("veriflow instance needs p >= 1 breakpoints");
  if (params.width == 0 || params.width > 64) throw InputError("veriflow field width outside [1,64]");
  const MultiRangeGeometry g{std::vector<unsigned>(params.d, params.width)};
  const std::uint64_t max = g.max_value(0);
  std::uint64_t previous = 0;
  for (std::uint64_t a : params.breakpoints) {
    if (a <= previous) throw InputError("breakpoints must satisfy 0 < a_1 < ... < a_p");
    previous = a;
  }
  if (params.b <= previous || params.b > max) {
    throw InputError("b must satisfy a_p < b < 2^width");
  }

  NetworkInstance<MultiRange> net{g, {}};
  auto& table = net.nodes[node];
  for (std::size_t i = 0; i < params.d; ++i) {
    for (std::uint64_t a : params.breakpoints) {
      std::vector<Interval> ranges;
      for (std::size_t f = 0; f < params.d; ++f) {
        if (f < i) ranges.push_back({0, max});
        else if (f == i) ranges.push_back({a, a});
        else ranges.push_back({params.b, params.b});
      }
      table.push_back({MultiRange::from_intervals(std::move(ranges), g), Action::drop()});
    }
  }
  table.push_back({MultiRange::full(g), Action::forward(node)});
  return net;
}

// Portable draws on top of mt19937_64 (whose output sequence is fixed by the
// standard, unlike the std distributions).
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : engine_() % bound; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return p >= 1.0 || unit() < p; }

 private:
  std::mt19937_64 engine_;
};

// Each letter is * with probability star_density, otherwise 0 or 1.
inline std::vector<Wildcard> random_wildcards(std::uint64_t seed, std::size_t n, std::size_t ell, double star_density) {
  Random rng(seed);
  std::vector<Wildcard> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text(ell, '*');
    for (char& ch : text) {
      if (!rng.chance(star_density)) ch = rng.below(2) ? '1' : '0';
    }
    out.push_back(Wildcard::parse(text, ell));
  }
  return out;
}

// Each field is [min(x,y), max(x,y)] for two uniform draws x, y.
inline std::vector<MultiRange> random_multiranges(std::uint64_t seed, std::size_t n, const MultiRangeGeometry& g) {
  g.validate();
  Random rng(seed);
  std::vector<MultiRange> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Interval> ranges;
    for (std::size_t f = 0; f < g.widths.size(); ++f) {
      const std::uint64_t span = g.max_value(f) == UINT64_MAX ? UINT64_MAX : g.max_value(f) + 1;
      std::uint64_t x = rng.below(span);
      std::uint64_t y = rng.below(span);
      if (x > y) std::swap(x, y);
      ranges.push_back({x, y});
    }
    out.push_back(MultiRange::from_intervals(std::move(ranges), g));
  }
  return out;
}

// Scatters rules over `node_count` nodes ("n0", "n1", …). Each rule lands in
// one or two tables; actions are mostly forwards to random nodes so that
// loops are common.
template <RuleSet S>
NetworkInstance<S> random_network(std::uint64_t seed, const std::vector<S>& rules, const typename S::Geometry& g,
                                  std::size_t node_count) {
  if (node_count == 0) throw InputError("random network needs at least one node");
  Random rng(seed ^ 0x9e3779b97f4a7c15ULL);
  NetworkInstance<S> net{g, {}};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < node_count; ++i) {
    names.push_back("n" + std::to_string(i));
    net.nodes[names.back()];
  }
  auto random_action = [&] {
    const std::uint64_t pick = rng.below(10);
    if (pick < 6) return Action::forward(names[rng.below(node_count)]);
    return pick < 8 ? Action::drop() : Action::deliver();
  };
  for (const S& r : rules) {
    const std::size_t copies = 1 + rng.below(2);
    for (std::size_t c = 0; c < copies; ++c) {
      net.nodes[names[rng.below(node_count)]].push_back({r, random_action()});
    }
  }
  return net;
}

}  // namespace atomloop::gen

#endif  // ATOMLOOP_GENERATORS_HPP
