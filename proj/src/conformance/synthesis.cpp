#include "mbmt/conformance/synthesis.hpp"

#include <map>

#include "mbmt/conformance/product.hpp"
#include "mbmt/tioa/completion.hpp"
#include "mbmt/tioa/symbolic.hpp"

namespace mbmt::conformance {

using zones::Dbm;
using zones::Federation;

namespace {

using Region = std::vector<Federation>;

class Solver {
 public:
  Solver(const Product& p, std::size_t max_sweeps) : p_(p), max_sweeps_(max_sweeps) {
    for (const std::string& input : p.spec().inputs) inputs_.push_back(input);
  }

  // Forcing fixpoint, then cooperative layers on top. Rules are assigned to
  // each layer's new states only, so conditions never overlap.
  void run() {
    const std::size_t n = p_.keys().size();
    Region x(n, Federation(p_.dimension()));
    for (std::size_t k = 0; k < n; ++k) x[k] = p_.keys()[k].goal_delay;

    while (true) {
      tick();
      Region next = x;
      bool changed = false;
      for (std::size_t k = 0; k < n; ++k) {
        const KeyInfo& info = p_.keys()[k];
        std::vector<Federation> in_pre = input_pre(info, x);
        Federation bad = escape(info, x);
        Federation forced = info.mut_deadline & info.output_any;
        forced -= bad;
        Federation via_move = union_of(in_pre);
        Federation good = x[k] | via_move;
        good |= forced;
        Federation grown = zones::timed_predecessor(good, bad);
        grown &= info.inv_mut;
        grown -= x[k];
        if (grown.is_empty()) continue;
        changed = true;
        Federation delay_part = zones::timed_predecessor(x[k] | via_move, bad);
        next[k] |= grown;
        assign(k, std::move(grown), in_pre, delay_part);
      }
      if (!changed) break;
      x = std::move(next);
    }
    forcing_ = x;

    Region c = x;
    while (true) {
      tick();
      Region next = c;
      bool changed = false;
      for (std::size_t k = 0; k < n; ++k) {
        const KeyInfo& info = p_.keys()[k];
        std::vector<Federation> in_pre = input_pre(info, c);
        Federation via_move = union_of(in_pre);
        Federation await = info.unmatched_any | output_pre(info, c);
        Federation target = c[k] | via_move;
        target |= await;
        Federation grown = target;
        grown.down();
        grown &= info.inv_mut;
        grown -= c[k];
        if (grown.is_empty()) continue;
        changed = true;
        Federation delay_part = c[k] | via_move;
        delay_part.down();
        next[k] |= grown;
        assign(k, std::move(grown), in_pre, delay_part);
      }
      if (!changed) break;
      c = std::move(next);
    }
    cooperative_ = c;
  }

  const Region& forcing() const { return forcing_; }
  const Region& cooperative() const { return cooperative_; }
  std::size_t sweeps() const { return sweeps_; }

  // (kind, action) -> key -> zone
  const std::map<std::pair<RuleKind, std::string>, std::map<std::size_t, Federation>>& rules()
      const {
    return rules_;
  }

 private:
  void tick() {
    if (++sweeps_ > max_sweeps_) {
      throw EngineError("strategy synthesis exceeded " + std::to_string(max_sweeps_) + " sweeps");
    }
  }

  static Federation pre(const ProductTransition& t, const Federation& target) {
    Federation out = tioa::reset_preimage(target, t.resets);
    out &= t.zone;
    return out;
  }

  // Per input label, states from which sending it lands in `region`.
  std::vector<Federation> input_pre(const KeyInfo& info, const Region& region) const {
    std::vector<Federation> out(inputs_.size(), Federation(p_.dimension()));
    for (const ProductTransition& t : info.transitions) {
      if (t.kind != MoveKind::Input || region[t.target].is_empty()) continue;
      for (std::size_t a = 0; a < inputs_.size(); ++a) {
        if (inputs_[a] == t.action) out[a] |= pre(t, region[t.target]);
      }
    }
    return out;
  }

  Federation output_pre(const KeyInfo& info, const Region& region) const {
    Federation out(p_.dimension());
    for (const ProductTransition& t : info.transitions) {
      if (t.kind == MoveKind::Output && !region[t.target].is_empty()) {
        out |= pre(t, region[t.target]);
      }
    }
    return out;
  }

  // States where a matched mutant output leaves `region`.
  Federation escape(const KeyInfo& info, const Region& region) const {
    Federation out(p_.dimension());
    for (const ProductTransition& t : info.transitions) {
      if (t.kind != MoveKind::Output) continue;
      out |= t.zone - pre(t, region[t.target]);
    }
    return out;
  }

  Federation union_of(const std::vector<Federation>& parts) const {
    Federation out(p_.dimension());
    for (const auto& f : parts) out |= f;
    return out;
  }

  // Splits a layer's new states: inputs first (in declaration order), then
  // delays, then waiting for an output.
  void assign(std::size_t key, Federation fresh, const std::vector<Federation>& in_pre,
              const Federation& delay_part) {
    for (std::size_t a = 0; a < inputs_.size() && !fresh.is_empty(); ++a) {
      Federation part = fresh & in_pre[a];
      if (part.is_empty()) continue;
      fresh -= part;
      slot(RuleKind::Input, inputs_[a], key) |= part;
    }
    if (fresh.is_empty()) return;
    Federation delay = fresh & delay_part;
    fresh -= delay;
    if (!delay.is_empty()) slot(RuleKind::Delay, "", key) |= delay;
    if (!fresh.is_empty()) slot(RuleKind::OutputAwait, "", key) |= fresh;
  }

  Federation& slot(RuleKind kind, const std::string& action, std::size_t key) {
    auto& per_key = rules_[{kind, action}];
    return per_key.try_emplace(key, p_.dimension()).first->second;
  }

  const Product& p_;
  std::size_t max_sweeps_;
  std::vector<std::string> inputs_;
  std::size_t sweeps_ = 0;
  Region forcing_;
  Region cooperative_;
  std::map<std::pair<RuleKind, std::string>, std::map<std::size_t, Federation>> rules_;
};

StrategyKey key_of(const Product& p, const ProductKey& k) {
  return {p.spec().locations[k.spec_loc].id, p.mut().locations[k.mut_loc].id, k.spec_vars,
          k.mut_vars};
}

std::string describe_goal(const Product& p) {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += "; ";
    out += s;
  };
  for (const KeyInfo& info : p.keys()) {
    for (const auto& [output, zone] : info.unmatched) {
      append("unmatched output " + output + "! in " + p.describe(info.key));
    }
    if (!info.goal_delay.is_empty()) append("delay beyond spec invariant in " + p.describe(info.key));
  }
  return out;
}

}  // namespace

SynthesisResult synthesize_strategy(const tioa::Tioa& spec, const tioa::Tioa& mutant,
                                    const std::string& mutant_id, std::size_t max_sweeps) {
  const tioa::Tioa s = tioa::demonic_complete(spec);
  const tioa::Tioa m = tioa::angelic_complete(mutant);
  const Product product(s, m);
  Solver solver(product, max_sweeps);
  solver.run();

  SynthesisResult result;
  result.sweeps = solver.sweeps();
  const Dbm origin = Dbm::zero(product.dimension());
  const std::size_t init = product.initial();
  if (!solver.cooperative()[init].includes(origin)) {
    result.conforms = true;
    return result;
  }

  Strategy st;
  st.mutant = mutant_id;
  st.goal = describe_goal(product);
  st.cooperative = !solver.forcing()[init].includes(origin);
  st.clocks = product.clock_names();
  for (const auto& [id, per_key] : solver.rules()) {
    Rule rule;
    rule.kind = id.first;
    rule.action = id.second;
    for (const auto& [key, zone] : per_key) {
      rule.conditions.push_back({key_of(product, product.keys()[key].key), zone});
    }
    st.rules.push_back(std::move(rule));
  }
  result.strategy = std::move(st);
  return result;
}

}  // namespace mbmt::conformance
