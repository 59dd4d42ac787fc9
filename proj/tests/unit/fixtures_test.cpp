#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "mbmt/conformance/oracle.hpp"
#include "mbmt/fixtures/models.hpp"
#include "mbmt/fixtures/pairs.hpp"
#include "mbmt/fixtures/sut.hpp"
#include "mbmt/fixtures/variants.hpp"
#include "mbmt/tioa/completion.hpp"
#include "mbmt/tioa/determinism.hpp"
#include "mbmt/tioa/io.hpp"
#include "mbmt/tioa/semantics.hpp"
#include "support/model_gen.hpp"

namespace mbmt::fixtures {
namespace {

using Lines = std::vector<std::string>;
using tioa::Tioa;

// Retailer in L1 with x = 0 and free = 1.
ModelSut retailer_in_l1(PolicyKind p) {
  ModelSut sut(retailer(), {p, 0});
  EXPECT_TRUE(sut.on_line("@delay 5").size() == 1);
  sut.on_line("coin");
  return sut;
}

TEST(ModelSut, EagerEmitsGarnishAtOnceInL1) {
  ModelSut sut = retailer_in_l1(PolicyKind::Eager);
  EXPECT_EQ(sut.on_line("@delay 5"), (Lines{"@delayed 0", "garnish"}));
}

TEST(ModelSut, LazyWaitsForTheInvariantBoundary) {
  ModelSut sut = retailer_in_l1(PolicyKind::Lazy);
  const Lines reply = sut.on_line("@delay 5");
  ASSERT_EQ(reply.size(), 2u);
  EXPECT_EQ(reply[0], "@delayed 4");
  EXPECT_TRUE(reply[1] == "garnish" || reply[1] == "tuna");
}

TEST(ModelSut, ZeroGrantUnderLazyIsSilent) {
  for (auto m : {retailer(), car_alarm(), timer()}) {
    ModelSut sut(m, {PolicyKind::Lazy, 0});
    EXPECT_EQ(sut.on_line("@delay 0"), (Lines{"@delayed 0"}));
  }
}

TEST(ModelSut, IgnoresInputsThatAreNotEnabled) {
  ModelSut sut(retailer(), {PolicyKind::Eager, 0});
  sut.on_line("coin");  // guard x > 4 fails at 0
  EXPECT_EQ(sut.state().location, 0u);
  sut.on_line("salmon");
  EXPECT_EQ(sut.state().location, 0u);
}

TEST(ModelSut, TimelockReportsHowFarTimeGot) {
  Tioa m = timer();
  m.edges.pop_back();  // Wait has a deadline and nothing to say
  ModelSut sut(m, {PolicyKind::Eager, 0});
  sut.on_line("start");
  EXPECT_EQ(sut.on_line("@delay 10"), (Lines{"@delayed 7"}));
  EXPECT_TRUE(sut.terminated());
  EXPECT_EQ(sut.exit_code(), 0);
}

TEST(ModelSut, CrashReplacesTheOutput) {
  ModelSut sut(retailer(), {PolicyKind::Eager, 0});
  sut.crash_on("garnish", 134, "boom\n");
  sut.on_line("@delay 5");
  sut.on_line("coin");
  EXPECT_EQ(sut.on_line("@delay 1"), (Lines{"@delayed 0"}));
  EXPECT_TRUE(sut.terminated());
  EXPECT_EQ(sut.exit_code(), 134);
  EXPECT_EQ(sut.diagnostics(), "boom\n");
}

// Drives a SUT with random stimuli and replays everything it says on the
// model it claims to run.
struct Replay {
  bool ok = true;
  std::string failure;
  Lines transcript;
};

Replay drive(const Tioa& m, OutputPolicy policy, std::uint64_t stimuli_seed, int steps = 30) {
  testkit::ModelGen gen(stimuli_seed);
  ModelSut sut(m, policy);
  tioa::SemState shadow = tioa::initial_state(m);
  Replay r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.failure = why + " after " + std::to_string(r.transcript.size()) + " lines";
  };
  for (int i = 0; i < steps && r.ok && !sut.terminated(); ++i) {
    if (gen.coin()) {
      const std::string& in = gen.choose(m.inputs);
      r.transcript.push_back(in);
      sut.on_line(in);
      if (auto next = tioa::step_action(m, shadow, in)) shadow = *next;
      continue;
    }
    const Rational grant(gen.pick(0, 12), 2);
    const std::string line = "@delay " + to_decimal(grant);
    r.transcript.push_back(line);
    const Lines reply = sut.on_line(line);
    if (reply.empty() || !reply[0].starts_with("@delayed ")) {
      fail("no delay report");
      break;
    }
    const auto elapsed = parse_decimal(std::string_view(reply[0]).substr(9));
    if (!elapsed || *elapsed > grant) {
      fail("over-reported delay " + reply[0]);
      break;
    }
    auto moved = tioa::step_delay(m, shadow, *elapsed);
    if (!moved) {
      fail("inadmissible delay " + reply[0]);
      break;
    }
    shadow = *moved;
    for (std::size_t k = 1; k < reply.size(); ++k) {
      r.transcript.push_back(reply[k]);
      const bool is_output =
          std::find(m.outputs.begin(), m.outputs.end(), reply[k]) != m.outputs.end();
      auto next = is_output ? tioa::step_action(m, shadow, reply[k]) : std::nullopt;
      if (!next) {
        fail("disallowed output " + reply[k]);
        break;
      }
      shadow = *next;
    }
    if (reply.size() == 1 && *elapsed < grant && !sut.terminated()) {
      fail("short delay without output");
    }
  }
  if (r.ok && sut.state() != shadow) fail("state diverged");
  return r;
}

TEST(ModelSutProperty, NeverDisallowedOutputNorOverReportedDelay) {
  testkit::ModelGen gen(20260101);
  int driven = 0;
  for (int i = 0; i < 300; ++i) {
    Tioa m = gen.model();
    if (!tioa::is_deterministic(m)) continue;
    ++driven;
    for (auto p : {PolicyKind::Eager, PolicyKind::Lazy, PolicyKind::Random}) {
      const Replay r = drive(m, {p, std::uint64_t(i)}, 1000 + i);
      ASSERT_TRUE(r.ok) << r.failure << "\npolicy " << policy_name(p) << "\n"
                        << tioa::serialize_model(m);
    }
  }
  EXPECT_GT(driven, 100);
}

TEST(ModelSutProperty, FixturesAndVariantsStayWithinTheirModels) {
  for (const auto& v : car_alarm_variants()) {
    if (v.kind == FaultKind::Crash) continue;
    for (int s = 0; s < 20; ++s) {
      const Replay r = drive(variant_model(v), {PolicyKind::Random, std::uint64_t(s)}, s, 40);
      ASSERT_TRUE(r.ok) << v.id << ": " << r.failure;
    }
  }
}

TEST(ModelSutProperty, SeededRandomIsReproducible) {
  testkit::ModelGen gen(77);
  for (int i = 0; i < 50; ++i) {
    Tioa m = gen.model();
    if (!tioa::is_deterministic(m)) continue;
    const Replay a = drive(m, {PolicyKind::Random, 9}, i);
    const Replay b = drive(m, {PolicyKind::Random, 9}, i);
    EXPECT_EQ(a.transcript, b.transcript);
  }
  std::set<Lines> distinct;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    distinct.insert(drive(retailer(), {PolicyKind::Random, seed}, 5, 60).transcript);
  }
  EXPECT_GT(distinct.size(), 1u);
}

TEST(Policy, NamesRoundTrip) {
  for (auto p : {PolicyKind::Eager, PolicyKind::Lazy, PolicyKind::Random}) {
    EXPECT_EQ(parse_policy(policy_name(p)), p);
  }
  EXPECT_FALSE(parse_policy("sloppy"));
}

// Edges and locations compared field by field; the count of differing
// entries is the edit distance used below.
int model_distance(const Tioa& a, const Tioa& b) {
  int d = 0;
  if (a.locations.size() != b.locations.size() || a.edges.size() != b.edges.size()) return 99;
  for (std::size_t i = 0; i < a.locations.size(); ++i) d += !(a.locations[i] == b.locations[i]);
  for (std::size_t i = 0; i < a.edges.size(); ++i) d += !(a.edges[i] == b.edges[i]);
  return d;
}

TEST(Variants, EachDiffersFromTheReferenceByOneEdit) {
  const auto& vs = car_alarm_variants();
  ASSERT_EQ(vs.front().id, "reference");
  EXPECT_EQ(variant_model(vs.front()), car_alarm());
  std::set<FaultKind> kinds;
  int faulty = 0;
  for (const auto& v : vs) {
    if (v.kind == FaultKind::None || v.kind == FaultKind::Crash) continue;
    ++faulty;
    kinds.insert(v.kind);
    const Tioa m = variant_model(v);
    EXPECT_EQ(model_distance(car_alarm(), m), 1) << v.id;
    EXPECT_TRUE(tioa::is_deterministic(m)) << v.id;
    EXPECT_FALSE(v.description.empty());
  }
  EXPECT_GE(faulty, 10);
  for (auto k : {FaultKind::Timing, FaultKind::WrongOutput, FaultKind::MissingReset,
                 FaultKind::WrongUpdate}) {
    EXPECT_TRUE(kinds.count(k)) << fault_kind_name(k);
  }
  EXPECT_TRUE(find_variant("crash"));
  EXPECT_FALSE(find_variant("F99"));
}

TEST(Pairs, ShapeOfTheCorpus) {
  const auto& pairs = labeled_pairs();
  EXPECT_GE(pairs.size(), 20u);
  int conforming = 0;
  for (const auto& p : pairs) {
    conforming += p.conforms;
    for (const Tioa* m : {&p.spec, &p.mutant}) {
      EXPECT_GE(m->clocks.size(), 1u) << p.id;
      EXPECT_LE(m->clocks.size(), 2u) << p.id;
      EXPECT_TRUE(tioa::validate(*m).empty()) << p.id;
      EXPECT_TRUE(tioa::is_deterministic(*m)) << p.id;
      auto small = [&](const tioa::Guard& g) {
        for (const auto& c : g) {
          if (std::count(m->clocks.begin(), m->clocks.end(), c.operand)) {
            EXPECT_LE(c.constant, 5) << p.id;
          }
        }
      };
      for (const auto& l : m->locations) small(l.invariant);
      for (const auto& e : m->edges) small(e.guard);
    }
  }
  EXPECT_GT(conforming, 0);
  EXPECT_LT(conforming, int(pairs.size()));
}

TEST(Pairs, LabelsMatchTheDiscreteOracle) {
  for (const auto& p : labeled_pairs()) {
    const auto r = conformance::discrete_conformance_oracle(tioa::demonic_complete(p.spec),
                                                            tioa::angelic_complete(p.mutant));
    EXPECT_EQ(r.conforms, p.conforms) << p.id << " " << p.note;
  }
}

TEST(Models, RetailerHashIsFrozen) {
  EXPECT_EQ(model_hash(retailer()), 0xbd30d4573992dc3aULL);
  EXPECT_EQ(tioa::parse_model(retailer_document()), retailer());
}

TEST(Models, NamedModels) {
  EXPECT_EQ(named_model("car-alarm"), car_alarm());
  EXPECT_THROW(named_model("toaster"), std::invalid_argument);
}

}  // namespace
}  // namespace mbmt::fixtures
