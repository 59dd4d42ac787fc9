#include <gtest/gtest.h>

#include "mbmt/fixtures/models.hpp"
#include "mbmt/tioa/completion.hpp"
#include "mbmt/tioa/determinism.hpp"
#include "mbmt/tioa/io.hpp"
#include "mbmt/tioa/semantics.hpp"
#include "support/model_gen.hpp"

using namespace mbmt;
using namespace mbmt::tioa;

namespace {

std::string first_error(std::string_view doc) {
  try {
    parse_model(doc);
  } catch (const ModelError& e) {
    return e.diagnostics().front().to_string();
  }
  return "";
}

SemState state(const Tioa& m, const std::string& loc, std::vector<std::int32_t> vars,
               std::vector<Rational> clocks) {
  clocks.insert(clocks.begin(), Rational(0));
  return {m.location_index(loc).value(), std::move(vars), std::move(clocks)};
}

std::vector<std::string> edge_strings(const Tioa& m, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < m.edges.size(); ++i) out.push_back(m.edges[i].to_string());
  return out;
}

}  // namespace

TEST(ParseModel, Retailer) {
  const Tioa m = parse_model(fixtures::retailer_document());
  EXPECT_EQ(m.locations.size(), 2u);
  EXPECT_EQ(m.initial, "L0");
  EXPECT_EQ(m.clocks, std::vector<std::string>{"x"});
  ASSERT_EQ(m.variables.size(), 1u);
  EXPECT_EQ(m.variables[0], (VarDecl{"free", 0, 1, 0}));
  EXPECT_EQ(m.inputs, std::vector<std::string>{"coin"});
  EXPECT_EQ(m.outputs, (std::vector<std::string>{"garnish", "tuna"}));
  EXPECT_EQ(m.edges.size(), 4u);
  EXPECT_EQ(m.locations[1].invariant, (Guard{{"x", Op::Le, 4}}));
  EXPECT_EQ(m.edges[1].to_string(), "L0 -[x>4 coin? {x} free:=1]-> L1");
}

TEST(ParseModel, EmptyLocationsHasNoInitial) {
  EXPECT_EQ(first_error(R"({"name": "E", "locations": [], "initial": "L0"})"),
            "initial: no initial location");
}

TEST(ParseModel, InvariantOperatorRestricted) {
  const std::string doc = R"({"clocks": ["x"], "initial": "A",
    "locations": [{"id": "A", "kind": "initial",
                   "invariant": [{"operand": "x", "op": ">", "constant": 2}]}]})";
  EXPECT_EQ(first_error(doc), "locations[0].invariant[0].op: invariant operator must be < or ≤");
}

TEST(ParseModel, SyntaxErrorCarriesLine) {
  EXPECT_EQ(first_error("{\n  \"name\": \"A\",\n  oops\n}").rfind("line 3: syntax error", 0), 0u);
}

TEST(ParseModel, UnknownReferenceCarriesFieldPath) {
  std::string doc(fixtures::retailer_document());
  doc.replace(doc.find("\"operand\": \"free\""), 17, "\"operand\": \"fre\"");
  EXPECT_EQ(first_error(doc), "edges[0].guard[1].operand: unknown reference 'fre'");
}

TEST(ParseModel, InitOutOfBounds) {
  std::string doc(fixtures::retailer_document());
  doc.replace(doc.find("\"init\": 0"), 9, "\"init\": 3");
  EXPECT_EQ(first_error(doc), "variables[0].init: variable init out of bounds");
}

TEST(ParseModel, UnicodeAndShortOperatorsAccepted) {
  std::string doc(fixtures::retailer_document());
  doc.replace(doc.find("\"op\": \"<=\""), 10, "\"op\": \"≤\"");
  doc.replace(doc.find("\"op\": \"==\""), 10, "\"op\": \"=\"");
  EXPECT_EQ(parse_model(doc), fixtures::retailer());
}

TEST(ParseModel, DuplicateGuardConstraintsCollapse) {
  std::string doc(fixtures::retailer_document());
  const std::string c = R"({"operand": "x", "op": ">", "constant": 1})";
  doc.replace(doc.find(c), c.size(), c + ", " + c);
  EXPECT_EQ(parse_model(doc).edges[3].guard.size(), 1u);
}

TEST(Determinism, RetailerIsDeterministic) {
  EXPECT_TRUE(is_deterministic(fixtures::retailer()));
  EXPECT_TRUE(is_deterministic(fixtures::car_alarm()));
  EXPECT_TRUE(is_deterministic(fixtures::timer()));
}

TEST(Determinism, DuplicateCoinEdge) {
  Tioa m = fixtures::retailer();
  m.edges.push_back(m.edges[1]);
  const auto cx = find_nondeterminism(m).value();
  EXPECT_EQ(cx.location, "L0");
  EXPECT_EQ(cx.action, "coin");
  EXPECT_EQ(cx.first_edge, 1u);
  EXPECT_EQ(cx.second_edge, 4u);
  EXPECT_EQ(cx.clocks.front().second, Rational(5));
}

TEST(Determinism, OverlappingTunaWitnessIsMidpoint) {
  Tioa m = fixtures::retailer();
  Edge extra = m.edges[3];
  extra.guard = {{"x", Op::Gt, 3}};
  m.edges.push_back(extra);
  const auto cx = find_nondeterminism(m).value();
  EXPECT_EQ(cx.location, "L1");
  EXPECT_EQ(cx.action, "tuna");
  EXPECT_EQ(cx.clocks.front().second, Rational(7, 2));
}

TEST(Determinism, UnreachableOverlapIsIgnored) {
  Tioa m = fixtures::retailer();
  // L1 is only entered with x = 0 and left by x <= 4, so a guard x > 4
  // never fires there.
  Edge extra = m.edges[3];
  extra.guard = {{"x", Op::Gt, 4}};
  m.edges.push_back(extra);
  EXPECT_TRUE(is_deterministic(m));
}

TEST(Completion, DemonicRetailer) {
  const Tioa r = fixtures::retailer();
  const Tioa d = demonic_complete(r);
  EXPECT_EQ(edge_strings(d, r.edges.size()),
            (std::vector<std::string>{"L0 -[x<=4 coin?]-> U", "L1 -[true coin?]-> U",
                                      "U -[true coin?]-> U", "U -[true garnish!]-> U",
                                      "U -[true tuna!]-> U"}));
  EXPECT_EQ(d.locations.back().kind, LocationKind::Universal);
  EXPECT_TRUE(d.locations.back().invariant.empty());
  EXPECT_TRUE(is_input_enabled(d));
  EXPECT_FALSE(is_input_enabled(r));
}

TEST(Completion, AngelicRetailer) {
  const Tioa r = fixtures::retailer();
  const Tioa a = angelic_complete(r);
  EXPECT_EQ(edge_strings(a, r.edges.size()),
            (std::vector<std::string>{"L0 -[x<=4 coin?]-> L0", "L1 -[true coin?]-> L1"}));
  EXPECT_TRUE(is_input_enabled(a));
}

TEST(Completion, AlreadyInputEnabled) {
  const Tioa a = angelic_complete(fixtures::retailer());
  const Tioa d = demonic_complete(a);
  EXPECT_EQ(d.locations.size(), a.locations.size() + 1);
  EXPECT_EQ(d.edges.size(), a.edges.size() + 3);
  EXPECT_EQ(angelic_complete(a), a);
}

TEST(Completion, NoInputsGetsOutputLoopsOnly) {
  Tioa m = fixtures::retailer();
  m.inputs.clear();
  m.edges.erase(m.edges.begin() + 1);
  const Tioa d = demonic_complete(m);
  EXPECT_EQ(edge_strings(d, m.edges.size()),
            (std::vector<std::string>{"U -[true garnish!]-> U", "U -[true tuna!]-> U"}));
}

TEST(Completion, SinkIgnoresAllInputs) {
  Tioa m = fixtures::retailer();
  m.inputs.push_back("bell");
  m.locations.push_back({"Sink", LocationKind::Sink, {}});
  const Tioa a = angelic_complete(m);
  std::vector<std::string> sink;
  for (const Edge& e : a.edges)
    if (e.source == "Sink") sink.push_back(e.to_string());
  EXPECT_EQ(sink, (std::vector<std::string>{"Sink -[true coin?]-> Sink", "Sink -[true bell?]-> Sink"}));
}

TEST(Completion, VariableDependentComplement) {
  Tioa m = fixtures::retailer();
  m.edges[1].guard.push_back({"free", Op::Eq, 0});
  const Tioa a = angelic_complete(m);
  EXPECT_EQ(edge_strings(a, m.edges.size()),
            (std::vector<std::string>{"L0 -[free==0 && x<=4 coin?]-> L0",
                                      "L0 -[free==1 coin?]-> L0", "L1 -[true coin?]-> L1"}));
  EXPECT_TRUE(is_input_enabled(a));
}

TEST(Completion, TargetInvariantCountsAsDisabled) {
  // The coin edge lands in L1 without resetting x, so it is only enabled
  // while x <= 4 holds after the move.
  Tioa m = fixtures::retailer();
  m.edges[1].guard.clear();
  m.edges[1].resets.clear();
  const Tioa a = angelic_complete(m);
  EXPECT_EQ(edge_strings(a, m.edges.size()),
            (std::vector<std::string>{"L0 -[x>4 coin?]-> L0", "L1 -[true coin?]-> L1"}));
}

TEST(CompletionProperty, InputEnabledAndIdempotent) {
  testkit::ModelGen gen(11);
  for (int t = 0; t < 200; ++t) {
    const Tioa m = gen.model();
    ASSERT_TRUE(validate(m).empty());
    const Tioa d = demonic_complete(m);
    const Tioa a = angelic_complete(m);
    EXPECT_TRUE(is_input_enabled(d)) << serialize_model(m);
    EXPECT_TRUE(is_input_enabled(a)) << serialize_model(m);
    EXPECT_EQ(demonic_complete(d), d);
    EXPECT_EQ(angelic_complete(a), a);
    EXPECT_TRUE(validate(d).empty());
    EXPECT_TRUE(validate(a).empty());
    if (is_deterministic(m)) {
      EXPECT_TRUE(is_deterministic(d)) << serialize_model(m);
      EXPECT_TRUE(is_deterministic(a)) << serialize_model(m);
    }
  }
}

TEST(RoundTripProperty, ParseSerializeParse) {
  testkit::ModelGen gen(12);
  for (int t = 0; t < 200; ++t) {
    const Tioa m = gen.model();
    const std::string text = serialize_model(m);
    const Tioa back = parse_model(text);
    EXPECT_EQ(back, m);
    EXPECT_EQ(serialize_model(back), text);
  }
}

TEST(StepSemantics, RetailerExamples) {
  const Tioa r = fixtures::retailer();
  EXPECT_EQ(step_delay(r, state(r, "L1", {1}, {0}), 4), state(r, "L1", {1}, {4}));
  EXPECT_FALSE(step_delay(r, state(r, "L1", {1}, {4}), Rational(1, 2)));
  EXPECT_EQ(step_action(r, state(r, "L0", {0}, {5}), "coin"), state(r, "L1", {1}, {0}));
  EXPECT_FALSE(step_action(r, state(r, "L0", {0}, {4}), "coin"));
  EXPECT_EQ(step_action(r, state(r, "L1", {1}, {4}), "tuna"), state(r, "L0", {1}, {4}));
}

TEST(StepSemantics, TwoEnabledEdgesThrow) {
  Tioa m = fixtures::retailer();
  m.edges.push_back(m.edges[1]);
  EXPECT_THROW(step_action(m, state(m, "L0", {0}, {5}), "coin"), NondeterminismError);
}

TEST(StepSemanticsProperty, DelaysAreAdditive) {
  testkit::ModelGen gen(13);
  for (int t = 0; t < 200; ++t) {
    const Tioa m = gen.model();
    SemState s = initial_state(m);
    if (!invariant_holds(m, s.location, s.clocks)) continue;
    const Rational d1(gen.pick(0, 12), 4), d2(gen.pick(0, 12), 4);
    const auto a = step_delay(m, s, d1);
    const auto both = step_delay(m, s, d1 + d2);
    if (a) {
      const auto b = step_delay(m, *a, d2);
      EXPECT_EQ(b.has_value(), both.has_value());
      if (b && both) EXPECT_EQ(*b, *both);
    } else {
      EXPECT_FALSE(both.has_value());
    }
  }
}

TEST(StepSemanticsProperty, DeterministicModelsStepUniquely) {
  testkit::ModelGen gen(14);
  for (int t = 0; t < 200; ++t) {
    const Tioa m = demonic_complete(gen.model());
    if (!is_deterministic(m)) continue;
    SemState s = initial_state(m);
    for (int step = 0; step < 8; ++step) {
      if (gen.coin()) {
        if (auto next = step_delay(m, s, Rational(gen.pick(0, 6), 2))) s = *next;
      } else {
        const auto actions = m.alphabet();
        const std::string& a = gen.choose(actions);
        EXPECT_LE(enabled_edges(m, s, a).size(), 1u);
        if (auto next = step_action(m, s, a)) s = *next;
      }
    }
  }
}
