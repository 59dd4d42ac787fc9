#include "mbmt/conformance/strategy.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mbmt::conformance {

using nlohmann::json;
using nlohmann::ordered_json;
using zones::Bound;
using zones::Dbm;
using zones::Federation;

namespace {

constexpr const char* kFormat = "mbmt-strategy";
constexpr int kVersion = 1;

ordered_json bound_json(const std::vector<std::string>& clocks, std::size_t i, std::size_t j,
                        Bound b) {
  // x_i - x_j ≺ c; with i = 0 this is a lower bound on x_j.
  ordered_json c;
  if (i == 0) {
    c["operand"] = clocks[j - 1];
    c["op"] = b.is_strict() ? ">" : ">=";
    c["constant"] = -b.value();
  } else {
    c["operand"] = clocks[i - 1];
    if (j != 0) c["minus"] = clocks[j - 1];
    c["op"] = b.is_strict() ? "<" : "<=";
    c["constant"] = b.value();
  }
  return c;
}

ordered_json zone_json(const std::vector<std::string>& clocks, const Dbm& z) {
  ordered_json out = ordered_json::array();
  const std::size_t n = z.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Bound b = z.at(i, j);
      if (b.is_infinite()) continue;
      if (i == 0 && b == Bound::zero()) continue;
      out.push_back(bound_json(clocks, i, j, b));
    }
  }
  return out;
}

struct Reader {
  const json& node;
  std::string path;

  [[noreturn]] void fail(const std::string& message) const {
    throw std::runtime_error(path + ": " + message);
  }
  Reader at(const std::string& key) const {
    if (!node.is_object() || !node.contains(key)) fail("missing field '" + key + "'");
    return {node.at(key), path + "." + key};
  }
  Reader at(std::size_t i) const { return {node.at(i), path + "[" + std::to_string(i) + "]"}; }
  std::size_t size() const {
    if (!node.is_array()) fail("expected an array");
    return node.size();
  }
  std::string str() const {
    if (!node.is_string()) fail("expected a string");
    return node.get<std::string>();
  }
  std::int32_t integer() const {
    if (!node.is_number_integer()) fail("expected an integer");
    return node.get<std::int32_t>();
  }
  bool boolean() const {
    if (!node.is_boolean()) fail("expected a boolean");
    return node.get<bool>();
  }
  std::vector<std::int32_t> ints() const {
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).integer());
    return out;
  }
};

std::size_t clock_slot(const Reader& r, const std::vector<std::string>& clocks) {
  const std::string name = r.str();
  for (std::size_t k = 0; k < clocks.size(); ++k) {
    if (clocks[k] == name) return k + 1;
  }
  r.fail("unknown clock '" + name + "'");
}

Dbm parse_zone(const Reader& r, const std::vector<std::string>& clocks) {
  Dbm z = Dbm::universe(clocks.size() + 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    const Reader c = r.at(k);
    const std::size_t x = clock_slot(c.at("operand"), clocks);
    std::size_t y = 0;
    if (c.node.contains("minus")) y = clock_slot(c.at("minus"), clocks);
    const std::string op = c.at("op").str();
    const std::int32_t value = c.at("constant").integer();
    bool ok = true;
    if (op == "<") {
      ok = z.constrain(x, y, Bound::strict(value));
    } else if (op == "<=") {
      ok = z.constrain(x, y, Bound::weak(value));
    } else if (op == ">" && y == 0) {
      ok = z.constrain(0, x, Bound::strict(-value));
    } else if (op == ">=" && y == 0) {
      ok = z.constrain(0, x, Bound::weak(-value));
    } else {
      c.at("op").fail("unsupported operator '" + op + "'");
    }
    if (!ok) c.fail("empty zone");
  }
  return z;
}

}  // namespace

std::string rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Input: return "input";
    case RuleKind::Delay: return "delay";
    case RuleKind::OutputAwait: return "output-await";
  }
  return "?";
}

std::optional<RuleKind> parse_rule_kind(std::string_view text) {
  if (text == "input") return RuleKind::Input;
  if (text == "delay") return RuleKind::Delay;
  if (text == "output-await") return RuleKind::OutputAwait;
  return std::nullopt;
}

const Rule* Strategy::match(const StrategyKey& key, std::span<const Rational> point) const {
  for (const Rule& rule : rules) {
    for (const RuleCondition& c : rule.conditions) {
      if (c.key == key && c.zone.contains(point)) return &rule;
    }
  }
  return nullptr;
}

std::vector<std::pair<const Rule*, const Federation*>> Strategy::conditions_at(
    const StrategyKey& key) const {
  std::vector<std::pair<const Rule*, const Federation*>> out;
  for (const Rule& rule : rules) {
    for (const RuleCondition& c : rule.conditions) {
      if (c.key == key) out.emplace_back(&rule, &c.zone);
    }
  }
  return out;
}

bool Strategy::operator==(const Strategy& other) const {
  return serialize_strategy(*this) == serialize_strategy(other);
}

std::string serialize_strategy(const Strategy& s) {
  ordered_json out;
  out["format"] = kFormat;
  out["version"] = kVersion;
  out["mutant"] = s.mutant;
  out["goal"] = s.goal;
  out["cooperative"] = s.cooperative;
  out["clocks"] = s.clocks;
  out["rules"] = ordered_json::array();
  for (const Rule& rule : s.rules) {
    ordered_json r;
    r["kind"] = rule_kind_name(rule.kind);
    if (rule.kind == RuleKind::Input) r["action"] = rule.action;
    r["conditions"] = ordered_json::array();
    for (const RuleCondition& c : rule.conditions) {
      ordered_json cj;
      cj["specLoc"] = c.key.spec_loc;
      cj["mutLoc"] = c.key.mut_loc;
      cj["specVars"] = c.key.spec_vars;
      cj["mutVars"] = c.key.mut_vars;
      cj["constraints"] = ordered_json::array();
      for (const Dbm& z : c.zone.zones()) cj["constraints"].push_back(zone_json(s.clocks, z));
      r["conditions"].push_back(std::move(cj));
    }
    out["rules"].push_back(std::move(r));
  }
  return out.dump(2) + "\n";
}

Strategy parse_strategy(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("syntax error: ") + e.what());
  }
  const Reader root{doc, "$"};
  if (root.at("format").str() != kFormat) root.at("format").fail("not a strategy file");
  if (root.at("version").integer() != kVersion) root.at("version").fail("unsupported version");
  Strategy s;
  s.mutant = root.at("mutant").str();
  s.goal = root.at("goal").str();
  s.cooperative = root.at("cooperative").boolean();
  const Reader clocks = root.at("clocks");
  for (std::size_t i = 0; i < clocks.size(); ++i) s.clocks.push_back(clocks.at(i).str());
  const Reader rules = root.at("rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Reader r = rules.at(i);
    Rule rule;
    const auto kind = parse_rule_kind(r.at("kind").str());
    if (!kind) r.at("kind").fail("unknown rule kind");
    rule.kind = *kind;
    if (rule.kind == RuleKind::Input) rule.action = r.at("action").str();
    const Reader conds = r.at("conditions");
    for (std::size_t k = 0; k < conds.size(); ++k) {
      const Reader c = conds.at(k);
      RuleCondition cond;
      cond.key.spec_loc = c.at("specLoc").str();
      cond.key.mut_loc = c.at("mutLoc").str();
      cond.key.spec_vars = c.at("specVars").ints();
      cond.key.mut_vars = c.at("mutVars").ints();
      cond.zone = Federation(s.dimension());
      const Reader zs = c.at("constraints");
      for (std::size_t z = 0; z < zs.size(); ++z) cond.zone.add(parse_zone(zs.at(z), s.clocks));
      rule.conditions.push_back(std::move(cond));
    }
    s.rules.push_back(std::move(rule));
  }
  return s;
}

void save_strategy(const Strategy& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_strategy(s);
}

Strategy load_strategy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_strategy(buffer.str());
}

}  // namespace mbmt::conformance
