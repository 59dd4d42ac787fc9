#include "mbmt/tioa/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace mbmt::tioa {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class Reader {
 public:
  std::vector<Diagnostic> errors;

  void error(const std::string& where, const std::string& message) {
    errors.push_back({where, message});
  }

  const json* field(const json& obj, const std::string& path, const char* key, bool required = true) {
    if (!obj.is_object()) {
      error(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(join(path, key), "missing field");
      return nullptr;
    }
    return &*it;
  }

  std::string string(const json& obj, const std::string& path, const char* key, bool required = true) {
    const json* v = field(obj, path, key, required);
    if (!v) return {};
    if (!v->is_string()) {
      error(join(path, key), "expected a string");
      return {};
    }
    return v->get<std::string>();
  }

  std::int32_t integer(const json& obj, const std::string& path, const char* key) {
    const json* v = field(obj, path, key);
    if (!v) return 0;
    return as_int(*v, join(path, key));
  }

  std::int32_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
      error(path, "expected an integer");
      return 0;
    }
    const auto n = v.get<std::int64_t>();
    if (n < std::numeric_limits<std::int32_t>::min() / 4 ||
        n > std::numeric_limits<std::int32_t>::max() / 4) {
      error(path, "integer out of range");
      return 0;
    }
    return static_cast<std::int32_t>(n);
  }

  const json* array(const json& obj, const std::string& path, const char* key, bool required = true) {
    const json* v = field(obj, path, key, required);
    if (!v) return nullptr;
    if (!v->is_array()) {
      error(join(path, key), "expected a list");
      return nullptr;
    }
    return v;
  }

  std::vector<std::string> strings(const json& obj, const std::string& path, const char* key,
                                   bool required = true) {
    std::vector<std::string> out;
    const json* v = array(obj, path, key, required);
    if (!v) return out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& item = (*v)[i];
      if (!item.is_string()) {
        error(index(join(path, key), i), "expected a string");
        continue;
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  Guard guard(const json& obj, const std::string& path, const char* key) {
    Guard out;
    const json* v = array(obj, path, key, false);
    if (!v) return out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string at = index(join(path, key), i);
      const json& item = (*v)[i];
      Constraint c;
      c.operand = string(item, at, "operand");
      const std::string op = string(item, at, "op");
      if (const auto parsed = parse_op(op)) {
        c.op = *parsed;
      } else if (item.is_object() && item.contains("op")) {
        error(at + ".op", "unknown operator '" + op + "'");
      }
      c.constant = integer(item, at, "constant");
      // Set semantics: a repeated constraint is the same constraint.
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
    }
    return out;
  }

  static std::string join(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }
};

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Tioa read(const json& doc, Reader& r) {
  Tioa m;
  if (!doc.is_object()) {
    r.error("", "model document must be an object");
    return m;
  }
  m.name = r.string(doc, "", "name", false);
  m.clocks = r.strings(doc, "", "clocks", false);
  if (const json* vars = r.array(doc, "", "variables", false)) {
    for (std::size_t i = 0; i < vars->size(); ++i) {
      const std::string at = Reader::index("variables", i);
      const json& v = (*vars)[i];
      VarDecl d;
      d.name = r.string(v, at, "name");
      d.min = r.integer(v, at, "min");
      d.max = r.integer(v, at, "max");
      d.init = r.integer(v, at, "init");
      m.variables.push_back(std::move(d));
    }
  }
  m.inputs = r.strings(doc, "", "inputs", false);
  m.outputs = r.strings(doc, "", "outputs", false);
  if (const json* locs = r.array(doc, "", "locations", false)) {
    for (std::size_t i = 0; i < locs->size(); ++i) {
      const std::string at = Reader::index("locations", i);
      const json& l = (*locs)[i];
      Location loc;
      loc.id = r.string(l, at, "id");
      const std::string kind = r.string(l, at, "kind", false);
      if (!kind.empty()) {
        if (const auto k = parse_kind(kind)) loc.kind = *k;
        else r.error(at + ".kind", "unknown location kind '" + kind + "'");
      }
      loc.invariant = r.guard(l, at, "invariant");
      m.locations.push_back(std::move(loc));
    }
  }
  m.initial = r.string(doc, "", "initial", false);
  if (const json* edges = r.array(doc, "", "edges", false)) {
    for (std::size_t i = 0; i < edges->size(); ++i) {
      const std::string at = Reader::index("edges", i);
      const json& e = (*edges)[i];
      Edge edge;
      edge.source = r.string(e, at, "source");
      edge.target = r.string(e, at, "target");
      edge.action = r.string(e, at, "action");
      const std::string dir = r.string(e, at, "direction");
      if (dir == "input") edge.direction = Direction::Input;
      else if (dir == "output") edge.direction = Direction::Output;
      else if (!dir.empty()) r.error(at + ".direction", "direction must be input or output");
      edge.guard = r.guard(e, at, "guard");
      edge.resets = r.strings(e, at, "resets", false);
      if (const json* u = r.field(e, at, "update", false)) {
        if (!u->is_object()) {
          r.error(at + ".update", "expected an object");
        } else {
          for (const auto& [var, value] : u->items()) {
            edge.update[var] = r.as_int(value, at + ".update." + var);
          }
        }
      }
      m.edges.push_back(std::move(edge));
    }
  }
  return m;
}

ordered_json write_guard(const Guard& g) {
  ordered_json out = ordered_json::array();
  for (const Constraint& c : g) {
    out.push_back({{"operand", c.operand}, {"op", op_symbol(c.op)}, {"constant", c.constant}});
  }
  return out;
}

}  // namespace

Tioa parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError({{"line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)),
                       "syntax error: " + std::string(e.what())}});
  }
  Reader r;
  Tioa m = read(doc, r);
  if (r.errors.empty()) r.errors = validate(m);
  if (!r.errors.empty()) throw ModelError(std::move(r.errors));
  return m;
}

std::string serialize_model(const Tioa& m) {
  ordered_json doc;
  doc["name"] = m.name;
  doc["clocks"] = m.clocks;
  doc["variables"] = ordered_json::array();
  for (const VarDecl& v : m.variables) {
    doc["variables"].push_back({{"name", v.name}, {"min", v.min}, {"max", v.max}, {"init", v.init}});
  }
  doc["inputs"] = m.inputs;
  doc["outputs"] = m.outputs;
  doc["locations"] = ordered_json::array();
  for (const Location& l : m.locations) {
    doc["locations"].push_back(
        {{"id", l.id}, {"kind", kind_name(l.kind)}, {"invariant", write_guard(l.invariant)}});
  }
  doc["initial"] = m.initial;
  doc["edges"] = ordered_json::array();
  for (const Edge& e : m.edges) {
    ordered_json update = ordered_json::object();
    for (const auto& [var, value] : e.update) update[var] = value;
    doc["edges"].push_back({{"source", e.source},
                            {"target", e.target},
                            {"action", e.action},
                            {"direction", e.direction == Direction::Input ? "input" : "output"},
                            {"guard", write_guard(e.guard)},
                            {"resets", e.resets},
                            {"update", update}});
  }
  return doc.dump(2) + "\n";
}

Tioa load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError({{path.string(), "cannot open model file"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void save_model(const Tioa& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_model(model);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace mbmt::tioa
