#include <gtest/gtest.h>

#include <sstream>

#include "atomloop/commands.hpp"
#include "atomloop/instance_io.hpp"

namespace atomloop {
namespace {

std::string error_of(const std::string& text) {
  try {
    io::parse_instance_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceIo, RoundTrip) {
  for (const io::AnyInstance& inst :
       {io::AnyInstance(gen::fig2_network()), io::AnyInstance(gen::hsa_hard(5)),
        io::AnyInstance(gen::veriflow_hard(gen::veriflow_defaults(2, 3)))}) {
    const nlohmann::json doc = io::to_json(inst);
    EXPECT_EQ(io::parse_instance(doc), inst);
    EXPECT_EQ(io::to_json(io::parse_instance_text(doc.dump())), doc);
  }
}

TEST(InstanceIo, ErrorsCarryJsonPaths) {
  EXPECT_NE(error_of("{").find("malformed JSON"), std::string::npos);
  EXPECT_EQ(error_of(R"({"kind":"ternary","nodes":[]})"), R"($.kind: expected "wildcard" or "multirange")");
  EXPECT_EQ(error_of(R"({"kind":"wildcard","header_bits":0,"nodes":[]})"), "$.header_bits: must be at least 1");
  EXPECT_EQ(error_of(R"({"kind":"multirange","field_widths":[65],"nodes":[]})"),
            "$.field_widths[0]: width outside [1,64]");
  const std::string bad_letter =
      R"({"kind":"wildcard","header_bits":3,"nodes":[{"id":"u","rules":[{"match":"12*","action":{"type":"drop"}}]}]})";
  EXPECT_EQ(error_of(bad_letter).rfind("$.nodes[0].rules[0].match: ", 0), 0U) << error_of(bad_letter);
  const std::string dup =
      R"({"kind":"wildcard","header_bits":1,"nodes":[{"id":"u","rules":[]},{"id":"u","rules":[]}]})";
  EXPECT_EQ(error_of(dup), R"($.nodes[1].id: duplicate node id "u")");
  const std::string target =
      R"({"kind":"wildcard","header_bits":1,"nodes":[{"id":"u","rules":[{"match":"*","action":{"type":"forward","to":"v"}}]}]})";
  EXPECT_EQ(error_of(target), R"($.nodes[0].rules[0].action.to: unknown node "v")");
  const std::string action =
      R"({"kind":"wildcard","header_bits":1,"nodes":[{"id":"u","rules":[{"match":"*","action":{"type":"flood"}}]}]})";
  EXPECT_EQ(error_of(action), R"($.nodes[0].rules[0].action.type: unknown action "flood")");
  const std::string range =
      R"({"kind":"multirange","field_widths":[2],"nodes":[{"id":"u","rules":[{"match":[[3,1]],"action":{"type":"drop"}}]}]})";
  EXPECT_EQ(error_of(range).rfind("$.nodes[0].rules[0].match: ", 0), 0U) << error_of(range);
  const std::string negative =
      R"({"kind":"multirange","field_widths":[2],"nodes":[{"id":"u","rules":[{"match":[[-1,1]],"action":{"type":"drop"}}]}]})";
  EXPECT_EQ(error_of(negative), "$.nodes[0].rules[0].match[0][0]: expected a nonnegative integer");
  EXPECT_THROW(io::load_instance("/nonexistent/instance.json"), InputError);
}

TEST(Commands, AtomsListingForToyExample) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_atoms(gen::fig2_network(), Algorithm::Incremental, out, err), cli::kOk);
  EXPECT_EQ(out.str(),
            "atoms 7\n"
            "[[0,4]]\t1\t0\n"
            "[[0,7]]\t1\t-\n"
            "[[1,4]]\t1\t0,1\n"
            "[[2,4]]\t2\t0,1,2\n"
            "[[2,5]]\t1\t1,2\n"
            "[[2,6]]\t1\t2\n"
            "[[3,3]]\t1\t0,1,2,3\n");
  std::ostringstream basic;
  cli::run_atoms(gen::fig2_network(), Algorithm::Basic, basic, err);
  EXPECT_EQ(basic.str(), out.str());
}

TEST(Commands, EmptyTablesGiveOneAtom) {
  const std::string text = R"({"kind":"wildcard","header_bits":6,"nodes":[{"id":"a","rules":[]}]})";
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_atoms(io::parse_instance_text(text), Algorithm::Incremental, out, err), cli::kOk);
  EXPECT_EQ(out.str(), "atoms 1\n******\t64\t-\n");
}

// The drop rules cover 10 * (256 + 16 + 1) = 2730 of the 4096 headers; the
// remaining 1366 reach the catch-all rule, which forwards back to the node.
TEST(Commands, VeriflowLoopsReport) {
  const auto net = gen::veriflow_hard(gen::veriflow_defaults(3, 10));
  ASSERT_EQ(oracle::loops(net).size(), 1366U);
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_loops(net, {}, out, err), cli::kLoopFound);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["atoms"], 31);
  EXPECT_EQ(doc["distinct_rules"], 31);
  EXPECT_EQ(doc["k"], 2);
  ASSERT_EQ(doc["loops"].size(), 1U);
  EXPECT_EQ(doc["loops"][0]["containers"], nlohmann::json::array({30}));
  EXPECT_EQ(doc["loops"][0]["atom_size"], "1366");
  EXPECT_EQ(doc["loops"][0]["cycle"], nlohmann::json::array({"u"}));
}

TEST(Commands, CheckToyExample) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_check(gen::fig2_network(), {}, out, err), cli::kOk);
  EXPECT_EQ(out.str(), "classes: engine 7, oracle 7\nloop headers: engine 0, oracle 0\nOK\n");
}

TEST(Commands, CheckSeedCorpus) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rules = gen::random_wildcards(seed, 10, 12, 0.5);
    std::ostringstream out, err;
    EXPECT_EQ(cli::run_check(gen::random_network(seed, rules, WildcardGeometry{12}, 3), {}, out, err), cli::kOk)
        << seed << "\n" << out.str();
  }
}

TEST(Commands, MetricsJson) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_metrics(gen::fig2_network(), Algorithm::Incremental, out, err), cli::kOk);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["k"], 4);
  EXPECT_EQ(doc["k_bar"], "13/7");
  EXPECT_EQ(doc["K_bar"], "4/1");
  EXPECT_EQ(doc["atoms"], 7);
  EXPECT_EQ(doc["distinct_rules"], 4);
}

TEST(Commands, LoopsExitCodes) {
  std::ostringstream out, err;
  DetectOptions opts;
  EXPECT_EQ(cli::run_loops(gen::hsa_hard(6), opts, out, err), cli::kOk);
  EXPECT_TRUE(nlohmann::json::parse(out.str())["loops"].empty());

  auto broken = gen::hsa_hard(4);
  auto& table = broken.nodes.at("u");
  table.erase(table.begin() + 4);  // 0***
  opts.witness = true;
  std::ostringstream loop_out;
  EXPECT_EQ(cli::run_loops(broken, opts, loop_out, err), cli::kLoopFound);
  const auto doc = nlohmann::json::parse(loop_out.str());
  ASSERT_EQ(doc["loops"].size(), 1U);
  EXPECT_EQ(doc["loops"][0]["cycle"], nlohmann::json::array({"u"}));
  EXPECT_EQ(doc["loops"][0]["witness"], "0000");
  EXPECT_EQ(doc["loops"][0]["atom_size"], "8");
}

TEST(Commands, CheckAndNegativeControls) {
  std::ostringstream out, err;
  const auto rules = gen::random_wildcards(4, 10, 10, 0.5);
  const io::AnyInstance inst = gen::random_network(4, rules, WildcardGeometry{10}, 3);
  EXPECT_EQ(cli::run_check(inst, {}, out, err), cli::kOk);
  EXPECT_NE(out.str().find("OK"), std::string::npos);

  ASSERT_FALSE(detect_loops(std::get<NetworkInstance<Wildcard>>(inst)).loops.empty());
  for (cli::Fault fault : {cli::Fault::DropCombination, cli::Fault::DropLoops}) {
    std::ostringstream faulty;
    cli::CheckOptions opts;
    opts.fault = fault;
    EXPECT_EQ(cli::run_check(inst, opts, faulty, err), cli::kMismatch);
    EXPECT_NE(faulty.str().find("MISMATCH"), std::string::npos);
  }

  std::ostringstream big_err;
  EXPECT_EQ(cli::run_check(gen::hsa_hard(30), {}, out, big_err), cli::kInputError);
}

TEST(Commands, GenRejectsBadParameters) {
  std::ostringstream out, err;
  cli::GenOptions o;
  o.family = cli::Family::Random;
  o.kind = "ternary";
  EXPECT_EQ(cli::run_gen(o, out, err), cli::kInputError);
  o.kind = "multirange";
  EXPECT_EQ(cli::run_gen(o, out, err), cli::kOk);
  o.family = cli::Family::Veriflow;
  o.b = 1;
  EXPECT_EQ(cli::run_gen(o, out, err), cli::kInputError);
}

}  // namespace
}  // namespace atomloop
