#include <gtest/gtest.h>

#include "pcext/errors.hpp"
#include "pcext/instance.hpp"
#include "test_support.hpp"

using namespace pcext;
using nlohmann::json;

namespace {

json cycle_factor(const std::string& name, int n, const std::string& prefix) {
  json f{{"name", name}, {"edges", json::array()}};
  for (int i = 0; i < n; ++i)
    f["edges"].push_back(json::array({prefix + std::to_string(i), prefix + std::to_string((i + 1) % n)}));
  return f;
}

json k2_factor() { return json{{"name", "K2"}, {"edges", json::array({json::array({"lo", "hi"})})}}; }

}  // namespace

TEST(Instance, ParsesLabelsAndPrecoloring) {
  json doc{{"factors", {cycle_factor("A", 4, "a"), cycle_factor("B", 4, "b")}},
           {"precoloring", {{{"from", {"a0", "b0"}}, {"to", {"a1", "b0"}}, {"color", 3}}}}};
  Instance inst = parse_instance(doc);
  ASSERT_EQ(inst.factors.size(), 2u);
  EXPECT_EQ(inst.factors[0].graph.order(), 4u);
  ASSERT_EQ(inst.pre.entries.size(), 1u);
  EXPECT_EQ(inst.pre.entries[0].color, 2u);
  EXPECT_EQ(coords_to_json(inst, inst.pre.entries[0].edge.tail()), json({"a0", "b0"}));
}

TEST(Instance, RoundTrip) {
  json doc{{"factors", {cycle_factor("A", 6, "x"), k2_factor()}},
           {"precoloring", {{{"from", {"x2", "lo"}}, {"to", {"x2", "hi"}}, {"color", 1}}}},
           {"mode", "k2"}};
  Instance a = parse_instance(doc);
  Instance b = parse_instance(to_json(a));
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_EQ(b.mode, Mode::kK2);
  EXPECT_EQ(b.factors[0].graph, a.factors[0].graph);
}

TEST(Instance, NumericLabelsAndIsolatedVertices) {
  json doc{{"factors", {{{"vertices", {0, 1, 2}}, {"edges", json::array({json::array({0, 1})})}}, k2_factor()}}};
  Instance inst = parse_instance(doc);
  EXPECT_EQ(inst.factors[0].graph.order(), 3u);
  EXPECT_EQ(inst.factors[0].graph.size(), 1u);
}

TEST(Instance, ParseErrors) {
  EXPECT_THROW(parse_instance(json::object()), InvalidInput);
  EXPECT_THROW(parse_instance(json{{"factors", {{{"edges", {{"a", "a"}}}}}}}), InvalidInput);
  json base{{"factors", {cycle_factor("A", 4, "a"), cycle_factor("B", 4, "b")}}};
  json unknown = base;
  unknown["precoloring"] = {{{"from", {"a0", "zz"}}, {"to", {"a1", "zz"}}, {"color", 1}}};
  EXPECT_THROW(parse_instance(unknown), InvalidInput);
  json not_edge = base;
  not_edge["precoloring"] = {{{"from", {"a0", "b0"}}, {"to", {"a2", "b0"}}, {"color", 1}}};
  EXPECT_THROW(parse_instance(not_edge), InvalidInput);
  json zero_color = base;
  zero_color["precoloring"] = {{{"from", {"a0", "b0"}}, {"to", {"a1", "b0"}}, {"color", 0}}};
  EXPECT_THROW(parse_instance(zero_color), InvalidInput);
  json bad_mode = base;
  bad_mode["mode"] = "quantum";
  EXPECT_THROW(parse_instance(bad_mode), InvalidInput);
  json bad_family = base;
  bad_family["factors"][0]["family"] = "tree";
  EXPECT_THROW(parse_instance(bad_family), InvalidInput);
}

TEST(Instance, AutoDispatch) {
  const ExtendOptions opts;
  auto mode_of = [&](json factors) {
    return resolve_mode(parse_instance(json{{"factors", factors}}), Mode::kAuto, opts);
  };
  EXPECT_EQ(mode_of({cycle_factor("A", 5, "a"), cycle_factor("B", 7, "b")}), Mode::kOddOdd);
  EXPECT_EQ(mode_of({cycle_factor("A", 5, "a"), k2_factor()}), Mode::kOddCycleK2);
  EXPECT_EQ(mode_of({cycle_factor("A", 6, "a"), k2_factor()}), Mode::kK2);
  EXPECT_EQ(mode_of({cycle_factor("A", 4, "a"), cycle_factor("B", 6, "b")}), Mode::kGeneral);
  // C4 x K2 x K2 is within the general hypotheses (max degree 2 is not more than half of 4).
  EXPECT_EQ(mode_of({cycle_factor("A", 4, "a"), k2_factor(), k2_factor()}), Mode::kGeneral);
  // With three K2 factors the degree total is odd.
  EXPECT_EQ(mode_of({cycle_factor("A", 4, "a"), k2_factor(), k2_factor(), k2_factor()}), Mode::kK2Power);
}

TEST(Instance, PalettePerMode) {
  Instance inst = parse_instance(json{{"factors", {cycle_factor("A", 4, "a"), k2_factor(), k2_factor()}}});
  EXPECT_EQ(palette_for(inst, Mode::kGeneral), 4u);
  EXPECT_EQ(palette_for(inst, Mode::kK2Power), 4u);
  Instance odd = parse_instance(json{{"factors", {cycle_factor("A", 5, "a"), cycle_factor("B", 5, "b")}}});
  EXPECT_EQ(palette_for(odd, Mode::kOddOdd), 5u);
}

TEST(Instance, SolveOddOddWithShuffledLabels) {
  // Cycle listed out of order: the solver must relabel and map back.
  json a{{"name", "A"}, {"edges", json::array({json::array({"p", "r"}), json::array({"q", "s"}), json::array({"r", "t"}),
                                  json::array({"s", "p"}), json::array({"t", "q"})})}};
  json doc{{"factors", {a, cycle_factor("B", 5, "b")}},
           {"precoloring", {{{"from", {"r", "b1"}}, {"to", {"t", "b1"}}, {"color", 5}}}}};
  Instance inst = parse_instance(doc);
  Solution s = solve(inst, Mode::kAuto, ExtendOptions{});
  EXPECT_EQ(s.mode, Mode::kOddOdd);
  EXPECT_TRUE(s.verification.ok()) << s.verification.summary();
  auto check = testing_support::check_result(inst.graphs(), s.result.coloring, inst.pre, 5);
  EXPECT_TRUE(check.ok());
}

TEST(Instance, SolutionDocumentVerifies) {
  json doc{{"factors", {cycle_factor("A", 4, "a"), cycle_factor("B", 6, "b")}},
           {"precoloring", {{{"from", {"a0", "b0"}}, {"to", {"a1", "b0"}}, {"color", 4}}}}};
  Instance inst = parse_instance(doc);
  Solution s = solve(inst, Mode::kAuto, ExtendOptions{});
  json out = solution_to_json(inst, s, false);
  EXPECT_EQ(out["palette"], 4);
  EXPECT_EQ(out["coloring"].size(), 48u);
  EXPECT_TRUE(verify_document(inst, out, Mode::kAuto, ExtendOptions{}).ok());

  json tampered = out;
  for (auto& entry : tampered["coloring"]) {
    if (entry["from"] == json({"a0", "b0"}) && entry["to"] == json({"a1", "b0"})) entry["color"] = 1;
  }
  auto r = verify_document(inst, tampered, Mode::kAuto, ExtendOptions{});
  EXPECT_FALSE(r.prescriptions_ok);

  json inflated = out;
  inflated["palette"] = 9;
  EXPECT_FALSE(verify_document(inst, inflated, Mode::kAuto, ExtendOptions{}).palette_ok);

  json diff_only = solution_to_json(inst, s, true);
  EXPECT_FALSE(diff_only.contains("coloring"));
  EXPECT_TRUE(diff_only.contains("diff"));
}

TEST(Instance, HypothesisViolationOnForcedMode) {
  json doc{{"factors", {cycle_factor("A", 4, "a"), cycle_factor("B", 6, "b")}}, {"mode", "odd_odd"}};
  EXPECT_THROW(solve(parse_instance(doc), Mode::kAuto, ExtendOptions{}), HypothesisError);
}
