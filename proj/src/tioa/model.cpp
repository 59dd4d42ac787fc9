#include "mbmt/tioa/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace mbmt::tioa {

std::string op_symbol(Op op) {
  switch (op) {
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Ge: return ">=";
    case Op::Gt: return ">";
  }
  return "?";
}

std::optional<Op> parse_op(std::string_view text) {
  if (text == "<") return Op::Lt;
  if (text == "<=" || text == "≤") return Op::Le;
  if (text == "==" || text == "=") return Op::Eq;
  if (text == "!=" || text == "≠") return Op::Ne;
  if (text == ">=" || text == "≥") return Op::Ge;
  if (text == ">") return Op::Gt;
  return std::nullopt;
}

std::string Constraint::to_string() const {
  return operand + op_symbol(op) + std::to_string(constant);
}

std::string guard_to_string(const Guard& guard) {
  if (guard.empty()) return "true";
  std::string out;
  for (const Constraint& c : guard) {
    if (!out.empty()) out += " && ";
    out += c.to_string();
  }
  return out;
}

std::string kind_name(LocationKind kind) {
  switch (kind) {
    case LocationKind::Normal: return "normal";
    case LocationKind::Initial: return "initial";
    case LocationKind::Universal: return "universal";
    case LocationKind::Sink: return "sink";
  }
  return "?";
}

std::optional<LocationKind> parse_kind(std::string_view text) {
  if (text == "normal") return LocationKind::Normal;
  if (text == "initial") return LocationKind::Initial;
  if (text == "universal") return LocationKind::Universal;
  if (text == "sink") return LocationKind::Sink;
  return std::nullopt;
}

std::string Edge::to_string() const {
  std::string out = source + " -[" + guard_to_string(guard) + " " + action +
                    (direction == Direction::Input ? "?" : "!");
  if (!resets.empty()) {
    out += " {";
    for (std::size_t i = 0; i < resets.size(); ++i) {
      if (i) out += ",";
      out += resets[i];
    }
    out += "}";
  }
  for (const auto& [var, value] : update) {
    out += " " + var + ":=" + std::to_string(value);
  }
  return out + "]-> " + target;
}

namespace {

template <typename T, typename Key>
std::optional<std::size_t> find_index(const std::vector<T>& items, std::string_view name, Key key) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (key(items[i]) == name) return i;
  }
  return std::nullopt;
}

void bump(std::int32_t& best, const Guard& guard, const Tioa& m) {
  for (const Constraint& c : guard) {
    if (m.is_clock(c.operand)) best = std::max(best, std::abs(c.constant));
  }
}

}  // namespace

std::optional<std::size_t> Tioa::location_index(std::string_view id) const {
  return find_index(locations, id, [](const Location& l) -> const std::string& { return l.id; });
}

std::optional<std::size_t> Tioa::clock_index(std::string_view n) const {
  return find_index(clocks, n, [](const std::string& s) -> const std::string& { return s; });
}

std::optional<std::size_t> Tioa::variable_index(std::string_view n) const {
  return find_index(variables, n, [](const VarDecl& v) -> const std::string& { return v.name; });
}

bool Tioa::is_input(std::string_view action) const {
  return std::find(inputs.begin(), inputs.end(), action) != inputs.end();
}

bool Tioa::is_output(std::string_view action) const {
  return std::find(outputs.begin(), outputs.end(), action) != outputs.end();
}

std::vector<std::string> Tioa::alphabet() const {
  std::vector<std::string> out = inputs;
  out.insert(out.end(), outputs.begin(), outputs.end());
  return out;
}

std::int32_t Tioa::max_clock_constant() const {
  std::int32_t best = 0;
  for (const Location& l : locations) bump(best, l.invariant, *this);
  for (const Edge& e : edges) bump(best, e.guard, *this);
  return best;
}

std::string Diagnostic::to_string() const {
  return where.empty() ? message : where + ": " + message;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const Diagnostic& d : ds) {
    if (!out.empty()) out += "; ";
    out += d.to_string();
  }
  return out;
}

}  // namespace

ModelError::ModelError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

namespace {

class Validator {
 public:
  explicit Validator(const Tioa& m) : m_(m) {}

  std::vector<Diagnostic> run() {
    names();
    locations();
    for (std::size_t i = 0; i < m_.edges.size(); ++i) edge(i);
    return std::move(out_);
  }

 private:
  void error(std::string where, std::string message) {
    out_.push_back({std::move(where), std::move(message)});
  }

  void unique(const std::vector<std::string>& names, const std::string& field,
              std::set<std::string>& seen) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) {
        error(field + "[" + std::to_string(i) + "]", "empty name");
      } else if (!seen.insert(names[i]).second) {
        error(field + "[" + std::to_string(i) + "]", "duplicate name '" + names[i] + "'");
      }
    }
  }

  void names() {
    std::set<std::string> operands;
    unique(m_.clocks, "clocks", operands);
    std::vector<std::string> vars;
    for (const VarDecl& v : m_.variables) vars.push_back(v.name);
    unique(vars, "variables", operands);
    std::set<std::string> actions;
    unique(m_.inputs, "inputs", actions);
    unique(m_.outputs, "outputs", actions);
    for (std::size_t i = 0; i < m_.variables.size(); ++i) {
      const VarDecl& v = m_.variables[i];
      const std::string at = "variables[" + std::to_string(i) + "]";
      if (v.min > v.max) error(at, "min exceeds max");
      else if (v.init < v.min || v.init > v.max) error(at + ".init", "variable init out of bounds");
    }
  }

  void locations() {
    std::set<std::string> ids;
    std::size_t initial = 0;
    for (std::size_t i = 0; i < m_.locations.size(); ++i) {
      const Location& l = m_.locations[i];
      const std::string at = "locations[" + std::to_string(i) + "]";
      if (l.id.empty()) error(at + ".id", "empty location id");
      else if (!ids.insert(l.id).second) error(at + ".id", "duplicate location id '" + l.id + "'");
      if (l.kind == LocationKind::Initial) {
        ++initial;
        if (l.id != m_.initial) error(at + ".kind", "initial kind on a location other than 'initial'");
      }
      for (std::size_t k = 0; k < l.invariant.size(); ++k) {
        const Constraint& c = l.invariant[k];
        const std::string cat = at + ".invariant[" + std::to_string(k) + "]";
        if (!m_.is_clock(c.operand)) {
          error(cat + ".operand", "invariant operand '" + c.operand + "' is not a clock");
        }
        if (c.op != Op::Lt && c.op != Op::Le) {
          error(cat + ".op", "invariant operator must be < or ≤");
        }
        if (c.constant < 0) error(cat + ".constant", "invariant constant must be non-negative");
      }
    }
    if (initial == 0 || !m_.location_index(m_.initial)) {
      error("initial", "no initial location");
    } else if (initial > 1) {
      error("locations", "more than one initial location");
    }
  }

  void edge(std::size_t i) {
    const Edge& e = m_.edges[i];
    const std::string at = "edges[" + std::to_string(i) + "]";
    if (!m_.location_index(e.source)) error(at + ".source", "unknown location '" + e.source + "'");
    if (!m_.location_index(e.target)) error(at + ".target", "unknown location '" + e.target + "'");
    const bool in = m_.is_input(e.action);
    const bool out = m_.is_output(e.action);
    if (!in && !out) {
      error(at + ".action", "unknown action '" + e.action + "'");
    } else if ((e.direction == Direction::Input) != in) {
      error(at + ".direction", "direction does not match the declared alphabet");
    }
    for (std::size_t k = 0; k < e.guard.size(); ++k) {
      const Constraint& c = e.guard[k];
      if (!m_.is_clock(c.operand) && !m_.variable_index(c.operand)) {
        error(at + ".guard[" + std::to_string(k) + "].operand",
              "unknown reference '" + c.operand + "'");
      }
    }
    std::set<std::string> seen;
    for (std::size_t k = 0; k < e.resets.size(); ++k) {
      const std::string rat = at + ".resets[" + std::to_string(k) + "]";
      if (!m_.is_clock(e.resets[k])) error(rat, "unknown clock '" + e.resets[k] + "'");
      else if (!seen.insert(e.resets[k]).second) error(rat, "duplicate reset");
    }
    for (const auto& [var, value] : e.update) {
      const auto idx = m_.variable_index(var);
      const std::string uat = at + ".update." + var;
      if (!idx) {
        error(uat, "unknown variable '" + var + "'");
      } else if (value < m_.variables[*idx].min || value > m_.variables[*idx].max) {
        error(uat, "update value out of bounds");
      }
    }
  }

  const Tioa& m_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Tioa& model) { return Validator(model).run(); }

}  // namespace mbmt::tioa
