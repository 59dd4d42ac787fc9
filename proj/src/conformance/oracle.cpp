#include "mbmt/conformance/oracle.hpp"

#include <algorithm>
#include <set>

#include "mbmt/tioa/semantics.hpp"

namespace mbmt::conformance {

using tioa::SemState;
using tioa::Tioa;

namespace {

struct Node {
  SemState spec;
  SemState mut;
  std::size_t parent = 0;
  std::string move;
  int depth = 0;
};

void clamp(SemState& s, const Rational& cap) {
  for (Rational& c : s.clocks) c = std::min(c, cap);
}

std::vector<std::int64_t> fingerprint(const Node& n, int denominator) {
  std::vector<std::int64_t> out;
  for (const SemState* s : {&n.spec, &n.mut}) {
    out.push_back(static_cast<std::int64_t>(s->location));
    out.insert(out.end(), s->vars.begin(), s->vars.end());
    for (std::size_t i = 1; i < s->clocks.size(); ++i) {
      const Rational scaled = s->clocks[i] * denominator;
      out.push_back(scaled.numerator() / scaled.denominator());
    }
  }
  return out;
}

std::vector<std::string> merged_trace(const std::vector<Node>& nodes, std::size_t leaf,
                                      std::string last) {
  std::vector<std::string> moves;
  if (!last.empty()) moves.push_back(std::move(last));
  for (std::size_t i = leaf; i != 0; i = nodes[i].parent) moves.push_back(nodes[i].move);
  std::reverse(moves.begin(), moves.end());

  std::vector<std::string> out;
  std::optional<Rational> pending;
  const std::string tag = "delay ";
  for (const std::string& m : moves) {
    if (m.starts_with(tag)) {
      const Rational d = *parse_decimal(m.substr(tag.size()));
      pending = pending.value_or(Rational(0)) + d;
      continue;
    }
    if (pending) out.push_back(tag + to_decimal(*pending));
    pending.reset();
    out.push_back(m);
  }
  if (pending) out.push_back(tag + to_decimal(*pending));
  return out;
}

}  // namespace

OracleResult discrete_conformance_oracle(const Tioa& spec, const Tioa& mut, int depth,
                                         int denominator) {
  const std::int32_t m = std::max(spec.max_clock_constant(), mut.max_clock_constant());
  const Rational grain(1, denominator);
  const Rational cap = Rational(m) + grain;

  std::vector<std::string> inputs = spec.inputs;
  std::vector<std::string> outputs = mut.outputs;

  OracleResult result;
  std::vector<Node> nodes;
  std::set<std::vector<std::int64_t>> seen;
  nodes.push_back({tioa::initial_state(spec), tioa::initial_state(mut), 0, "", 0});
  seen.insert(fingerprint(nodes[0], denominator));

  auto violate = [&](std::size_t at, std::string last, std::string what) {
    result.conforms = false;
    result.trace = merged_trace(nodes, at, std::move(last));
    result.violation = std::move(what);
    result.states = nodes.size();
    return result;
  };

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const SemState s = nodes[i].spec;
    const SemState t = nodes[i].mut;
    const int d = nodes[i].depth;

    for (const std::string& o : outputs) {
      if (tioa::enabled_edges(mut, t, o).empty()) continue;
      if (!tioa::step_action(spec, s, o)) {
        return violate(i, o + "!", "spec cannot match output " + o + "!");
      }
    }
    if (tioa::step_delay(mut, t, grain) && !tioa::step_delay(spec, s, grain)) {
      return violate(i, "delay " + to_decimal(grain), "spec cannot let time pass");
    }
    if (d == depth) continue;

    auto push = [&](SemState ns, SemState nt, std::string move) {
      clamp(ns, cap);
      clamp(nt, cap);
      Node n{std::move(ns), std::move(nt), i, std::move(move), d + 1};
      if (seen.insert(fingerprint(n, denominator)).second) nodes.push_back(std::move(n));
    };
    // The model is deterministic; a nondeterministic mutant branches.
    auto both = [&](const std::string& a, const std::string& move) {
      auto ns = tioa::step_action(spec, s, a);
      if (!ns) return;
      for (SemState& nt : tioa::step_action_all(mut, t, a)) push(*ns, std::move(nt), move);
    };
    for (const std::string& a : inputs) both(a, a + "?");
    for (const std::string& o : outputs) both(o, o + "!");
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(m + 1) * denominator; ++k) {
      const Rational delay = grain * k;
      auto nt = tioa::step_delay(mut, t, delay);
      if (!nt) break;
      auto ns = tioa::step_delay(spec, s, delay);
      if (!ns) break;
      push(std::move(*ns), std::move(*nt), "delay " + to_decimal(delay));
    }
  }
  result.states = nodes.size();
  return result;
}

}  // namespace mbmt::conformance
