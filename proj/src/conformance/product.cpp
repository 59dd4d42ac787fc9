#include "mbmt/conformance/product.hpp"

#include <deque>

namespace mbmt::conformance {

using tioa::ClockSpace;
using tioa::Edge;
using tioa::Tioa;
using zones::Bound;
using zones::Dbm;
using zones::Federation;

Product::Product(const Tioa& spec, const Tioa& mut)
    : spec_(spec), mut_(mut), dim_(1 + spec.clocks.size() + mut.clocks.size()) {
  spec_space_.dimension = mut_space_.dimension = dim_;
  for (std::size_t k = 0; k < spec.clocks.size(); ++k) {
    spec_space_.slots.push_back(1 + k);
    clock_names_.push_back(spec.clocks[k] + ".spec");
  }
  for (std::size_t k = 0; k < mut.clocks.size(); ++k) {
    mut_space_.slots.push_back(1 + spec.clocks.size() + k);
    clock_names_.push_back(mut.clocks[k] + ".mut");
  }
  ProductKey init;
  init.spec_loc = spec.location_index(spec.initial).value();
  init.mut_loc = mut.location_index(mut.initial).value();
  for (const auto& v : spec.variables) init.spec_vars.push_back(v.init);
  for (const auto& v : mut.variables) init.mut_vars.push_back(v.init);
  intern(init);
  for (std::size_t i = 0; i < keys_.size(); ++i) expand(i);
}

std::optional<std::size_t> Product::find(const ProductKey& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Product::describe(const ProductKey& key) const {
  std::string out = "(" + spec_.locations[key.spec_loc].id + ", " + mut_.locations[key.mut_loc].id;
  for (std::size_t v = 0; v < key.spec_vars.size(); ++v) {
    out += ", " + spec_.variables[v].name + ".spec=" + std::to_string(key.spec_vars[v]);
  }
  for (std::size_t v = 0; v < key.mut_vars.size(); ++v) {
    out += ", " + mut_.variables[v].name + ".mut=" + std::to_string(key.mut_vars[v]);
  }
  return out + ")";
}

std::size_t Product::intern(const ProductKey& key) {
  const auto [it, inserted] = index_.try_emplace(key, keys_.size());
  if (inserted) {
    KeyInfo info;
    info.key = key;
    keys_.push_back(std::move(info));
  }
  return it->second;
}

namespace {

std::vector<std::size_t> edges_from(const Tioa& m, std::size_t loc, const std::string& action) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    if (m.edges[i].source == m.locations[loc].id && m.edges[i].action == action) out.push_back(i);
  }
  return out;
}

std::vector<std::int32_t> updated(const Tioa& m, const Edge& e, std::vector<std::int32_t> vars) {
  for (const auto& [var, value] : e.update) vars[m.variable_index(var).value()] = value;
  return vars;
}

Federation deadline(const Tioa& m, std::size_t loc, const ClockSpace& space, const Dbm& within) {
  Federation out(space.dimension);
  for (const tioa::Constraint& c : m.locations[loc].invariant) {
    if (c.op != tioa::Op::Le) continue;
    Dbm z = within;
    const std::size_t i = space.slots[m.clock_index(c.operand).value()];
    if (z.constrain(0, i, Bound::weak(-c.constant))) out.add(std::move(z));
  }
  return out;
}

}  // namespace

void Product::expand(std::size_t index) {
  // Copy: interning new keys may reallocate keys_.
  const ProductKey key = keys_[index].key;
  KeyInfo info;
  info.key = key;
  info.inv_spec = tioa::invariant_zone(spec_, key.spec_loc, spec_space_);
  info.inv_mut = tioa::invariant_zone(mut_, key.mut_loc, mut_space_);
  info.inv_both = info.inv_spec;
  info.inv_both.intersect(info.inv_mut);
  info.goal_delay = Federation(dim_);
  info.goal_delay.add(info.inv_mut);
  info.goal_delay -= info.inv_spec;
  info.unmatched_any = Federation(dim_);
  info.output_any = Federation(dim_);
  info.mut_deadline = deadline(mut_, key.mut_loc, mut_space_, info.inv_both);

  auto pair_moves = [&](MoveKind kind, const std::string& action, Federation* mut_enabled,
                        Federation* spec_enabled) {
    const auto spec_edges = edges_from(spec_, key.spec_loc, action);
    const auto mut_edges = edges_from(mut_, key.mut_loc, action);
    for (std::size_t te : mut_edges) {
      Federation zt = tioa::enabled_zone(mut_, mut_.edges[te], key.mut_vars, mut_space_);
      zt &= info.inv_both;
      if (zt.is_empty()) continue;
      if (mut_enabled) *mut_enabled |= zt;
      for (std::size_t se : spec_edges) {
        Federation zs = tioa::enabled_zone(spec_, spec_.edges[se], key.spec_vars, spec_space_);
        if (spec_enabled) *spec_enabled |= zs;
        Federation both = zt & zs;
        if (both.is_empty()) continue;
        ProductKey next;
        next.spec_loc = spec_.location_index(spec_.edges[se].target).value();
        next.mut_loc = mut_.location_index(mut_.edges[te].target).value();
        next.spec_vars = updated(spec_, spec_.edges[se], key.spec_vars);
        next.mut_vars = updated(mut_, mut_.edges[te], key.mut_vars);
        ProductTransition t;
        t.kind = kind;
        t.action = action;
        t.spec_edge = se;
        t.mut_edge = te;
        t.zone = std::move(both);
        t.resets = tioa::reset_slots(spec_, spec_.edges[se], spec_space_);
        for (std::size_t r : tioa::reset_slots(mut_, mut_.edges[te], mut_space_)) t.resets.push_back(r);
        t.target = intern(next);
        info.transitions.push_back(std::move(t));
      }
    }
  };

  for (const std::string& input : spec_.inputs) pair_moves(MoveKind::Input, input, nullptr, nullptr);
  for (const std::string& output : mut_.outputs) {
    Federation mut_enabled(dim_);
    Federation spec_enabled(dim_);
    pair_moves(MoveKind::Output, output, &mut_enabled, &spec_enabled);
    if (mut_enabled.is_empty()) continue;
    info.output_any |= mut_enabled;
    // Spec zones are collected per matching mutant edge; recompute in full
    // in case the mutant had no edge to pair with.
    spec_enabled = Federation(dim_);
    for (std::size_t se : edges_from(spec_, key.spec_loc, output)) {
      spec_enabled |= tioa::enabled_zone(spec_, spec_.edges[se], key.spec_vars, spec_space_);
    }
    Federation miss = mut_enabled - spec_enabled;
    if (!miss.is_empty()) {
      info.unmatched_any |= miss;
      info.unmatched.emplace_back(output, std::move(miss));
    }
  }
  keys_[index] = std::move(info);
}

}  // namespace mbmt::conformance
