#include "mbmt/driver/execute.hpp"

#include <algorithm>

#include "mbmt/tioa/semantics.hpp"

namespace mbmt::driver {

using conformance::Rule;
using conformance::RuleKind;
using conformance::Strategy;
using conformance::StrategyKey;
using tioa::SemState;
using tioa::Tioa;
using zones::DelayInterval;

namespace {

const Rational kHalf(1, 2);

// Orders by lower end, a closed end first.
bool starts_before(const DelayInterval& a, const DelayInterval& b) {
  if (a.lower != b.lower) return a.lower < b.lower;
  return a.lower_closed && !b.lower_closed;
}

// a is followed by b without a gap (b starts no later than a ends).
bool joins(const DelayInterval& a, const DelayInterval& b) {
  if (!a.upper) return true;
  if (b.lower < *a.upper) return true;
  return b.lower == *a.upper && (a.upper_closed || b.lower_closed);
}

std::vector<DelayInterval> merged(std::vector<DelayInterval> parts) {
  std::erase_if(parts, [](const DelayInterval& i) { return i.empty; });
  std::sort(parts.begin(), parts.end(), starts_before);
  std::vector<DelayInterval> out;
  for (DelayInterval& i : parts) {
    if (!out.empty() && joins(out.back(), i)) {
      DelayInterval& last = out.back();
      if (!last.upper) continue;
      if (!i.upper || *i.upper > *last.upper) {
        last.upper = i.upper;
        last.upper_closed = i.upper_closed;
      } else if (*i.upper == *last.upper) {
        last.upper_closed = last.upper_closed || i.upper_closed;
      }
      continue;
    }
    out.push_back(std::move(i));
  }
  return out;
}

std::vector<DelayInterval> delays_into(const zones::Federation& f, std::span<const Rational> point) {
  std::vector<DelayInterval> parts;
  for (const zones::Dbm& z : f.zones()) parts.push_back(z.delay_interval(point));
  return merged(std::move(parts));
}

// Delays the mutant admits and the model does not.
DelayInterval divergence(const Tioa& spec, const SemState& s, const Tioa& mut, const SemState& t) {
  const DelayInterval a = tioa::admissible_delays(mut, t);
  const DelayInterval b = tioa::admissible_delays(spec, s);
  DelayInterval out;
  out.empty = true;
  if (a.empty || b.empty || !b.upper) return out;
  if (a.upper && (*a.upper < *b.upper || (*a.upper == *b.upper && (!a.upper_closed || b.upper_closed)))) {
    return out;
  }
  out.empty = false;
  out.lower = *b.upper;
  out.lower_closed = !b.upper_closed;
  out.upper = a.upper;
  out.upper_closed = a.upper_closed;
  return out;
}

std::vector<Rational> product_point(const SemState& s, const SemState& t) {
  std::vector<Rational> p{0};
  p.insert(p.end(), s.clocks.begin() + 1, s.clocks.end());
  p.insert(p.end(), t.clocks.begin() + 1, t.clocks.end());
  return p;
}

}  // namespace

std::optional<Rational> delay_target(const Strategy& strategy, const Rule& rule,
                                     const StrategyKey& key, std::span<const Rational> point,
                                     const DelayInterval& div) {
  std::vector<DelayInterval> own;
  std::vector<DelayInterval> others;
  for (const auto& [r, zone] : strategy.conditions_at(key)) {
    auto parts = delays_into(*zone, point);
    auto& into = r == &rule ? own : others;
    into.insert(into.end(), parts.begin(), parts.end());
  }
  own = merged(std::move(own));
  others = merged(std::move(others));
  if (own.empty() || !own.front().contains(0)) return std::nullopt;
  const DelayInterval& here = own.front();
  if (!here.upper) return std::nullopt;

  std::vector<DelayInterval> next = others;
  if (!div.empty) next.push_back(div);
  const DelayInterval* best = nullptr;
  for (const DelayInterval& i : next) {
    if (i.empty) continue;
    const bool after = i.lower > *here.upper || (i.lower == *here.upper && !(here.upper_closed && i.lower_closed));
    if (!after) continue;
    if (!best || starts_before(i, *best)) best = &i;
  }
  if (best) return best->representative(kHalf);
  return *here.upper + kHalf;
}

TestResult execute_test(const Strategy& strategy, const Tioa& spec, const Tioa& mut,
                        SutSession& sut, const ExecutionBounds& bounds) {
  TestResult result;
  result.id = strategy.mutant;
  SemState s = tioa::initial_state(spec);
  SemState t = tioa::initial_state(mut);
  Rational now(0);
  Rational waited(0);
  std::int32_t steps = 0;
  const Rule* previous = nullptr;
  bool saw_termination = false;

  auto finish = [&](Verdict v, InconclusiveReason why, std::string text) {
    result.verdict = v;
    result.inconclusive = why;
    result.reason = std::move(text);
    return result;
  };
  auto settle = [&](Classification c, const std::string& what) -> std::optional<TestResult> {
    switch (c) {
      case Classification::Continue: return std::nullopt;
      case Classification::Pass:
        return finish(Verdict::Pass, InconclusiveReason::None,
                      what + ": the model allows it, the mutant does not");
      case Classification::PrimaryFail:
        return finish(Verdict::PrimaryFail, InconclusiveReason::None,
                      what + ": the mutant allows it, the model does not");
      case Classification::OtherFail:
        return finish(Verdict::OtherFail, InconclusiveReason::None,
                      what + ": neither the model nor the mutant allows it");
    }
    return std::nullopt;
  };

  try {
    while (true) {
      const StrategyKey key{spec.locations[s.location].id, mut.locations[t.location].id, s.vars,
                            t.vars};
      const std::vector<Rational> point = product_point(s, t);
      const Rule* rule = strategy.match(key, point);
      if (!rule) {
        return finish(Verdict::Inconclusive, InconclusiveReason::NoRule,
                      "no rule holds in " + tioa::describe(spec, s) + " / " + tioa::describe(mut, t));
      }
      if (rule != previous) {
        if (++steps > bounds.step_bound) {
          return finish(Verdict::Inconclusive, InconclusiveReason::StepBoundExceeded,
                        "more than " + std::to_string(bounds.step_bound) + " rule changes");
        }
        previous = rule;
      }

      if (rule->kind == RuleKind::Input) {
        auto ns = tioa::step_action(spec, s, rule->action);
        auto nt = tioa::step_action(mut, t, rule->action);
        if (!ns || !nt) throw std::logic_error("input " + rule->action + " not enabled on a completed model");
        sut.send_input(rule->action);
        result.trace.push_back({now, rule->action + "?"});
        s = std::move(*ns);
        t = std::move(*nt);
        continue;
      }

      const Rational remaining = bounds.max_wait - waited;
      if (remaining <= 0) {
        return finish(Verdict::Inconclusive, InconclusiveReason::MaxWaitExceeded,
                      "waited " + to_decimal(waited) + " time units");
      }
      const auto target = delay_target(strategy, *rule, key, point, divergence(spec, s, mut, t));
      const Rational grant = target ? std::min(*target, remaining) : remaining;
      const GrantOutcome got = sut.grant_delay(grant);
      waited += got.elapsed;

      if (got.elapsed > 0) {
        auto [spec_can, ns] = step_simulation(s, spec, ObservedEvent::delay_of(got.elapsed));
        auto [mut_can, nt] = step_simulation(t, mut, ObservedEvent::delay_of(got.elapsed));
        if (!spec_can && !sut.mode().simulated && bounds.latency_allowance > 0) {
          const Rational relaxed = std::max(Rational(0), got.elapsed - bounds.latency_allowance);
          if (auto r = tioa::step_delay(spec, s, relaxed)) {
            spec_can = true;
            ns = std::move(*r);
            result.latency_adjusted = true;
          }
        }
        result.trace.push_back({now + got.elapsed, "delay " + to_decimal(got.elapsed)});
        now += got.elapsed;
        if (auto done = settle(classify_observation(spec_can, mut_can),
                               "delay of " + to_decimal(got.elapsed))) {
          return *done;
        }
        s = std::move(ns);
        t = std::move(nt);
      }
      if (got.output) {
        const auto ev = ObservedEvent::output(*got.output);
        auto [spec_can, ns] = step_simulation(s, spec, ev);
        auto [mut_can, nt] = step_simulation(t, mut, ev);
        result.trace.push_back({now, *got.output + "!"});
        if (auto done = settle(classify_observation(spec_can, mut_can), "output " + *got.output)) {
          return *done;
        }
        s = std::move(ns);
        t = std::move(nt);
      }
      if (got.terminated && !saw_termination) {
        saw_termination = true;
        result.trace.push_back({now, "terminated"});
        if (sut.channel().crashed()) {
          result.diagnostics = sut.channel().diagnostics();
          const auto code = sut.channel().exit_code();
          return finish(Verdict::Crashed, InconclusiveReason::None,
                        code ? "SUT exited with status " + std::to_string(*code)
                             : std::string("SUT killed by a signal"));
        }
      }
    }
  } catch (const ProtocolError& e) {
    result.diagnostics = sut.channel().diagnostics();
    return finish(Verdict::Inconclusive, InconclusiveReason::ProtocolViolation, e.what());
  }
}

}  // namespace mbmt::driver
