#include <gtest/gtest.h>

#include "atomloop/check.hpp"
#include "atomloop/generators.hpp"
#include "atomloop/network.hpp"
#include "atomloop/oracle.hpp"
#include "test_support.hpp"

namespace atomloop {
namespace {

using test::wc;

NetworkInstance<Wildcard> two_node_ring() {
  NetworkInstance<Wildcard> net{{3}, {}};
  net.nodes["a"] = {{wc("1**"), Action::forward("b")}, {wc("***"), Action::deliver()}};
  net.nodes["b"] = {{wc("11*"), Action::drop()}, {wc("1**"), Action::forward("a")}};
  return net;
}

TEST(RuleIndex, IdsFollowFirstOccurrence) {
  const RuleIndex<Wildcard> index = build_rule_index(two_node_ring());
  EXPECT_EQ(index.node_ids, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(index.rule_sets.size(), 3U);
  EXPECT_EQ(index.rule_sets[0].str(), "1**");
  EXPECT_EQ(index.rule_sets[1].str(), "***");
  EXPECT_EQ(index.rule_sets[2].str(), "11*");
  EXPECT_EQ(index.occurrences[0], (std::vector<RuleOccurrence>{{0, 0, ActionType::Forward, 1},
                                                               {1, 1, ActionType::Forward, 0}}));
  EXPECT_EQ(index.occurrences[2], (std::vector<RuleOccurrence>{{1, 0, ActionType::Drop, kNoNode}}));
}

TEST(ForwardingGraph, LowestTableIndexWins) {
  const RuleIndex<Wildcard> index = build_rule_index(two_node_ring());
  const std::vector<RuleId> in_10x{0, 1};
  EXPECT_EQ(forwarding_graph<Wildcard>(in_10x, index), (SuccessorGraph{1, 0}));
  const std::vector<RuleId> in_11x{0, 1, 2};
  EXPECT_EQ(forwarding_graph<Wildcard>(in_11x, index), (SuccessorGraph{1, std::nullopt}));
  const std::vector<RuleId> in_0xx{1};
  EXPECT_EQ(forwarding_graph<Wildcard>(in_0xx, index), (SuccessorGraph{std::nullopt, std::nullopt}));
}

TEST(HasCycle, Examples) {
  EXPECT_FALSE(has_cycle({}));
  EXPECT_FALSE(has_cycle({1, 2, std::nullopt}));
  EXPECT_EQ(has_cycle({0}), (std::vector<std::size_t>{0}));
  EXPECT_EQ(has_cycle({1, 2, 1}), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(has_cycle({std::nullopt, 2, 3, 1}), (std::vector<std::size_t>{1, 2, 3}));
  // Tail into an already explored acyclic path.
  EXPECT_FALSE(has_cycle({std::nullopt, 0, 1, 1}));
}

TEST(Witness, FirstHeaderOutsideNonContainers) {
  const std::vector<Wildcard> non_containers{wc("000*"), wc("0010")};
  EXPECT_EQ(witness_header<Wildcard>(wc("00**"), non_containers), "0011");
  EXPECT_EQ(witness_header<Wildcard>(wc("00**"), non_containers, 3), std::nullopt);
  const std::vector<Wildcard> everything{wc("00**")};
  EXPECT_EQ(witness_header<Wildcard>(wc("00**"), everything), std::nullopt);
}

TEST(DetectLoops, TwoNodeRing) {
  DetectOptions opts;
  opts.witness = true;
  const auto analysis = detect_loops(two_node_ring(), opts);
  ASSERT_EQ(analysis.loops.size(), 1U);
  const LoopFinding& f = analysis.loops[0];
  EXPECT_EQ(f.combination, "1**");
  EXPECT_EQ(f.containers, (std::vector<RuleId>{0, 1}));
  EXPECT_EQ(f.atom_size, 2);
  EXPECT_EQ(f.cycle, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(f.witness, "100");
  EXPECT_TRUE(check_against_oracle(two_node_ring(), analysis).ok());
  EXPECT_EQ(oracle::loops(two_node_ring()), (std::vector<oracle::Header>{0b100, 0b101}));
}

TEST(DetectLoops, ThreadedMatchesSequential) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rules = gen::random_wildcards(seed, 12, 10, 0.5);
    const auto net = gen::random_network(seed, rules, WildcardGeometry{10}, 4);
    DetectOptions one;
    one.witness = true;
    DetectOptions many = one;
    many.jobs = 4;
    const auto a = detect_loops(net, one);
    const auto b = detect_loops(net, many);
    ASSERT_EQ(a.loops.size(), b.loops.size());
    for (std::size_t i = 0; i < a.loops.size(); ++i) {
      EXPECT_EQ(a.loops[i].combination, b.loops[i].combination);
      EXPECT_EQ(a.loops[i].cycle, b.loops[i].cycle);
      EXPECT_EQ(a.loops[i].witness, b.loops[i].witness);
    }
  }
}

TEST(DetectLoops, FirstOnlyStopsEarly) {
  auto net = two_node_ring();
  net.nodes["a"].insert(net.nodes["a"].begin(), {wc("0**"), Action::forward("a")});
  DetectOptions opts;
  EXPECT_EQ(detect_loops(net, opts).loops.size(), 2U);
  opts.first_only = true;
  EXPECT_EQ(detect_loops(net, opts).loops.size(), 1U);
}

TEST(DetectLoops, RejectsUnknownTarget) {
  auto net = two_node_ring();
  net.nodes["a"].push_back({wc("***"), Action::forward("zz")});
  EXPECT_THROW(detect_loops(net), InputError);
}

TEST(Oracle, MembershipBitOrder) {
  // Letter 0 is the most significant header bit.
  EXPECT_TRUE(oracle::matches(wc("1*0"), 0b100));
  EXPECT_TRUE(oracle::matches(wc("1*0"), 0b110));
  EXPECT_FALSE(oracle::matches(wc("1*0"), 0b101));
  const MultiRange r = test::mr("[[1,2],[3,3]]", {2, 3});
  EXPECT_TRUE(oracle::matches(r, 0b01011));
  EXPECT_FALSE(oracle::matches(r, 0b11011));
  EXPECT_EQ(oracle::header_text(0b01011, 5), "01011");
  EXPECT_THROW(oracle::require_small(23), InputError);
  EXPECT_NO_THROW(oracle::require_small(22));
}

TEST(Oracle, ClassesOfToyExample) {
  const auto rules = gen::fig2_rules();
  const oracle::Classes classes = oracle::classes<MultiRange>(rules, gen::fig2_geometry());
  const oracle::Classes expected{
      {{}, {7}},     {{0}, {0}},       {{0, 1}, {1}},          {{0, 1, 2}, {2, 4}},
      {{1, 2}, {5}}, {{2}, {6}},       {{0, 1, 2, 3}, {3}},
  };
  EXPECT_EQ(classes, expected);
}

TEST(Check, DetectsInjectedDifferences) {
  const auto net = two_node_ring();
  auto analysis = detect_loops(net);
  analysis.loops.clear();
  const CheckResult result = check_against_oracle(net, analysis);
  EXPECT_FALSE(result.ok());
  EXPECT_EQ(result.oracle_loop_headers, 2U);
  EXPECT_EQ(result.engine_loop_headers, 0U);
}

}  // namespace
}  // namespace atomloop
