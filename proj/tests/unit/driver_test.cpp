#include <gtest/gtest.h>

#include <chrono>
#include <deque>

#include "mbmt/conformance/synthesis.hpp"
#include "mbmt/driver/execute.hpp"
#include "mbmt/fixtures/models.hpp"
#include "mbmt/fixtures/sut.hpp"
#include "mbmt/fixtures/variants.hpp"
#include "mbmt/mutation/mutation.hpp"
#include "mbmt/tioa/completion.hpp"

namespace mbmt::driver {
namespace {

using Script = std::deque<std::vector<std::string>>;

// Braced pairs of literals would pick the iterator-pair constructor.
std::vector<std::string> lines(std::initializer_list<std::string> l) { return l; }

using conformance::Strategy;
using fixtures::ModelSut;
using fixtures::OutputPolicy;
using fixtures::PolicyKind;
using tioa::Tioa;

// Replies with canned lines, one batch per received line.
class Scripted : public LineEndpoint {
 public:
  explicit Scripted(Script replies, std::vector<std::string>* log = nullptr)
      : replies_(std::move(replies)), log_(log) {}
  std::vector<std::string> on_line(const std::string& line) override {
    if (log_) log_->push_back(line);
    if (replies_.empty()) {
      done_ = true;
      return {};
    }
    auto r = std::move(replies_.front());
    replies_.pop_front();
    return r;
  }
  bool terminated() const override { return done_; }

 private:
  Script replies_;
  std::vector<std::string>* log_;
  bool done_ = false;
};

struct Case {
  Tioa spec = fixtures::retailer();
  Tioa spec_completed = tioa::demonic_complete(spec);
  mutation::Mutant mutant;
  Tioa mut_completed;
  Strategy strategy;

  explicit Case(mutation::OperatorId op, std::string_view edit = "") {
    for (auto& m : mutation::generate_mutants(spec, {op})) {
      if (m.edit.find(edit) == std::string::npos) continue;
      mutant = m;
      break;
    }
    mut_completed = tioa::angelic_complete(mutant.model);
    auto r = conformance::synthesize_strategy(spec, mutant.model, mutant.id);
    if (!r.strategy) throw std::logic_error("mutant conforms");
    strategy = *r.strategy;
  }

  TestResult run(std::unique_ptr<LineEndpoint> sut, ExecutionBounds bounds = {}) const {
    LoopbackChannel channel(std::move(sut));
    SutSession session(channel, TimeMode::simulation());
    return execute_test(strategy, spec_completed, mut_completed, session, bounds);
  }
};

std::unique_ptr<LineEndpoint> model_sut(const Tioa& m, PolicyKind p, std::uint64_t seed = 0) {
  return std::make_unique<ModelSut>(m, OutputPolicy{p, seed});
}

TEST(Classify, TableCells) {
  EXPECT_EQ(classify_observation(true, true), Classification::Continue);
  EXPECT_EQ(classify_observation(true, false), Classification::Pass);
  EXPECT_EQ(classify_observation(false, true), Classification::PrimaryFail);
  EXPECT_EQ(classify_observation(false, false), Classification::OtherFail);
}

TEST(StepSimulation, RetailerExamples) {
  const Tioa m = tioa::demonic_complete(fixtures::retailer());
  tioa::SemState s{m.location_index("L1").value(), {1}, {0, 4}};
  auto [can_tuna, next] = step_simulation(s, m, ObservedEvent::output("tuna"));
  EXPECT_TRUE(can_tuna);
  EXPECT_EQ(m.locations[next.location].id, "L0");
  auto [can_wait, same] = step_simulation(s, m, ObservedEvent::delay_of(Rational(1, 2)));
  EXPECT_FALSE(can_wait);
  EXPECT_EQ(same, s);
  EXPECT_FALSE(step_simulation(s, m, ObservedEvent::output("salmon")).first);
  EXPECT_FALSE(step_simulation(s, m, ObservedEvent::output("coin")).first);
  EXPECT_TRUE(step_simulation(s, m, ObservedEvent::termination()).first);
}

TEST(Session, SimulatedGrants) {
  LoopbackChannel full(std::make_unique<Scripted>(Script{lines({"@delayed 5"})}));
  SutSession a(full, TimeMode::simulation());
  const GrantOutcome g = a.grant_delay(5);
  EXPECT_EQ(g.elapsed, Rational(5));
  EXPECT_FALSE(g.output);

  LoopbackChannel cut(
      std::make_unique<Scripted>(Script{lines({"@delayed 2", "tuna"})}));
  SutSession b(cut, TimeMode::simulation());
  const GrantOutcome h = b.grant_delay(5);
  EXPECT_EQ(h.elapsed, Rational(2));
  EXPECT_EQ(h.output, "tuna");
}

TEST(Session, ProtocolViolations) {
  for (auto reply : {lines({"@delayed 6"}), lines({"@delayed -1"}), lines({"@delayed x"}),
                     lines({"tuna"}), lines({"@delayed 1", "@delayed 1"})}) {
    LoopbackChannel ch(std::make_unique<Scripted>(Script{reply}));
    SutSession s(ch, TimeMode::simulation());
    EXPECT_THROW(s.grant_delay(5), ProtocolError) << reply[0];
  }
}

TEST(Session, InputIsOneLine) {
  std::vector<std::string> log;
  LoopbackChannel ch(std::make_unique<Scripted>(Script{lines({}), lines({})}, &log));
  SutSession s(ch, TimeMode::simulation());
  s.send_input("coin");
  EXPECT_EQ(log, (std::vector<std::string>{"coin"}));
}

TEST(Session, GrantsAfterTerminationAreFull) {
  LoopbackChannel ch(std::make_unique<Scripted>(Script{}));
  SutSession s(ch, TimeMode::simulation());
  const GrantOutcome first = s.grant_delay(3);
  EXPECT_TRUE(first.terminated);
  EXPECT_EQ(first.elapsed, Rational(0));
  s.send_input("coin");  // ignored
  const GrantOutcome later = s.grant_delay(3);
  EXPECT_TRUE(later.terminated);
  EXPECT_EQ(later.elapsed, Rational(3));
}

TEST(Session, RealTimeSilentSut) {
  ProcessChannel ch("cat > /dev/null");
  SutSession s(ch, TimeMode::real(100));
  const auto start = std::chrono::steady_clock::now();
  const GrantOutcome g = s.grant_delay(1);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(g.elapsed, Rational(1));
  EXPECT_FALSE(g.output);
  EXPECT_GE(ms, 95);
  EXPECT_LT(ms, 400);
}

TEST(Session, RealTimeOutputIsTimestamped) {
  ProcessChannel ch("sleep 0.2; echo tuna; cat > /dev/null");
  SutSession s(ch, TimeMode::real(100));
  const GrantOutcome g = s.grant_delay(10);
  ASSERT_EQ(g.output, "tuna");
  EXPECT_GE(g.elapsed, Rational(15, 10));
  EXPECT_LE(g.elapsed, Rational(5));
}

TEST(Session, ProcessExitCodeAndStderr) {
  ProcessChannel ch("echo boom >&2; exit 7");
  SutSession s(ch, TimeMode::simulation());
  const GrantOutcome g = s.grant_delay(1);
  EXPECT_TRUE(g.terminated);
  EXPECT_TRUE(ch.crashed());
  EXPECT_EQ(ch.exit_code(), 7);
  EXPECT_EQ(ch.diagnostics(), "boom\n");
}

TEST(Execute, PrimaryFailOnLooseInvariant) {
  const Case c(mutation::OperatorId::Minv);
  const TestResult r = c.run(model_sut(c.mutant.model, PolicyKind::Lazy));
  EXPECT_EQ(r.verdict, Verdict::PrimaryFail) << r.reason;
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.back().event, "delay 4.5");
}

TEST(Execute, PassWhenSpecDoesWhatMutantCannot) {
  // Mutant ignores coin on (4, 5]; the model then has to serve a meal.
  const Case c(mutation::OperatorId::Mgc, "x>4 changed to x>5");
  for (PolicyKind p : {PolicyKind::Eager, PolicyKind::Lazy, PolicyKind::Random}) {
    const TestResult r = c.run(model_sut(c.spec, p, 7));
    EXPECT_EQ(r.verdict, Verdict::Pass) << fixtures::policy_name(p) << ": " << r.reason;
  }
}

TEST(Execute, OtherFailOnUndeclaredOutput) {
  const Case c(mutation::OperatorId::Minv);
  auto sut = std::make_unique<Scripted>(Script{lines({"@delayed 1", "salmon"})});
  const TestResult r = c.run(std::move(sut));
  EXPECT_EQ(r.verdict, Verdict::OtherFail);
  EXPECT_EQ(r.trace.back().event, "salmon!");
}

TEST(Execute, NoRuleIsInconclusive) {
  Case c(mutation::OperatorId::Minv);
  c.strategy.rules.clear();
  const TestResult r = c.run(model_sut(c.spec, PolicyKind::Eager));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_EQ(r.inconclusive, InconclusiveReason::NoRule);
}

TEST(Execute, MaxWaitIsInconclusive) {
  Case c(mutation::OperatorId::Minv);
  // One delay rule that never ends, against a SUT that never speaks.
  conformance::Rule wait;
  wait.kind = conformance::RuleKind::Delay;
  wait.conditions.push_back({{"L0", "L0", {0}, {0}}, zones::Federation::universe(3)});
  c.strategy.rules = {wait};
  ExecutionBounds bounds;
  bounds.max_wait = 2;
  const TestResult r = c.run(model_sut(c.spec, PolicyKind::Lazy), bounds);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_EQ(r.inconclusive, InconclusiveReason::MaxWaitExceeded);
  EXPECT_EQ(r.trace.back().time, Rational(2));
}

TEST(Execute, StepBoundIsInconclusive) {
  // An eager mutant answers garnish at once and never lets x pass 4.
  const Case c(mutation::OperatorId::Minv);
  const TestResult r = c.run(model_sut(c.mutant.model, PolicyKind::Eager));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_EQ(r.inconclusive, InconclusiveReason::StepBoundExceeded);
}

TEST(Execute, StepAndWaitBoundsHold) {
  const Case c(mutation::OperatorId::Minv);
  for (int bound : {1, 3, 10}) {
    ExecutionBounds b;
    b.step_bound = bound;
    b.max_wait = 30;
    const TestResult r = c.run(model_sut(c.spec, PolicyKind::Random, 3), b);
    Rational waited(0);
    int inputs = 0;
    for (const auto& e : r.trace) {
      if (e.event.starts_with("delay ")) waited += *parse_decimal(e.event.substr(6));
      if (e.event.ends_with("?")) ++inputs;
    }
    EXPECT_LE(waited, b.max_wait);
    EXPECT_LE(inputs, bound);
  }
}

TEST(Execute, TerminatedSutActsAsSink) {
  const Case c(mutation::OperatorId::Minv);
  // Exits cleanly before answering anything.
  const TestResult r = c.run(std::make_unique<Scripted>(Script{}));
  EXPECT_EQ(r.verdict, Verdict::PrimaryFail) << r.reason;
  bool saw = false;
  for (const auto& e : r.trace) saw = saw || e.event == "terminated";
  EXPECT_TRUE(saw);
}

TEST(Execute, CrashCarriesDiagnostics) {
  const Tioa spec = fixtures::car_alarm();
  const auto crash = *fixtures::find_variant("crash");
  for (const auto& m : mutation::generate_mutants(spec, {mutation::OperatorId::Mo})) {
    if (m.edit.find("Triggered") == std::string::npos) continue;
    const auto r = conformance::synthesize_strategy(spec, m.model, m.id);
    if (!r.strategy) continue;
    LoopbackChannel ch(std::make_unique<ModelSut>(fixtures::make_variant_sut(crash)));
    SutSession session(ch, TimeMode::simulation());
    const TestResult t = execute_test(*r.strategy, tioa::demonic_complete(spec),
                                      tioa::angelic_complete(m.model), session, {});
    if (t.verdict != Verdict::Crashed) continue;
    EXPECT_NE(t.diagnostics.find("Siren::start"), std::string::npos);
    EXPECT_EQ(t.reason, "SUT exited with status 134");
    return;
  }
  FAIL() << "no strategy reached the crash";
}

TEST(Execute, ProtocolViolationIsInconclusive) {
  const Case c(mutation::OperatorId::Minv);
  const TestResult r =
      c.run(std::make_unique<Scripted>(Script{lines({"hello"})}));
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
  EXPECT_EQ(r.inconclusive, InconclusiveReason::ProtocolViolation);
}

TEST(Execute, SimulatedRunsAreRepeatable) {
  const Case c(mutation::OperatorId::Minv);
  const TestResult a = c.run(model_sut(c.spec, PolicyKind::Random, 11));
  const TestResult b = c.run(model_sut(c.spec, PolicyKind::Random, 11));
  EXPECT_EQ(a, b);
  for (std::size_t i = 1; i < a.trace.size(); ++i) EXPECT_LE(a.trace[i - 1].time, a.trace[i].time);
}

TEST(DelayTarget, StopsJustPastTheRule) {
  const Case c(mutation::OperatorId::Minv);
  const std::vector<Rational> origin{0, 0, 0};
  const conformance::StrategyKey key{"L0", "L0", {0}, {0}};
  const auto* rule = c.strategy.match(key, origin);
  ASSERT_NE(rule, nullptr);
  ASSERT_EQ(rule->kind, conformance::RuleKind::Delay);
  zones::DelayInterval none;
  none.empty = true;
  // Delay covers [0, 4]; coin is sent on (4, inf).
  EXPECT_EQ(delay_target(c.strategy, *rule, key, origin, none), Rational(9, 2));
}

}  // namespace
}  // namespace mbmt::driver
