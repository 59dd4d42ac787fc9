#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbmt::tioa {

enum class Op { Lt, Le, Eq, Ne, Ge, Gt };

// Canonical ASCII spelling: <, <=, ==, !=, >=, >.
std::string op_symbol(Op op);
std::optional<Op> parse_op(std::string_view text);

// `operand op constant`, where operand names a clock or a variable.
struct Constraint {
  std::string operand;
  Op op = Op::Le;
  std::int32_t constant = 0;

  bool operator==(const Constraint&) const = default;
  std::string to_string() const;
};

using Guard = std::vector<Constraint>;

std::string guard_to_string(const Guard& guard);

struct VarDecl {
  std::string name;
  std::int32_t min = 0;
  std::int32_t max = 0;
  std::int32_t init = 0;

  bool operator==(const VarDecl&) const = default;
};

enum class LocationKind { Normal, Initial, Universal, Sink };

std::string kind_name(LocationKind kind);
std::optional<LocationKind> parse_kind(std::string_view text);

struct Location {
  std::string id;
  LocationKind kind = LocationKind::Normal;
  Guard invariant;

  bool operator==(const Location&) const = default;
};

enum class Direction { Input, Output };

struct Edge {
  std::string source;
  std::string target;
  std::string action;
  Direction direction = Direction::Input;
  Guard guard;
  std::vector<std::string> resets;
  std::map<std::string, std::int32_t> update;

  bool operator==(const Edge&) const = default;
  // "L0 -[x>4 coin? {x} free:=1]-> L1"
  std::string to_string() const;
};

struct Tioa {
  std::string name;
  std::vector<std::string> clocks;
  std::vector<VarDecl> variables;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Location> locations;
  std::string initial;
  std::vector<Edge> edges;

  bool operator==(const Tioa&) const = default;

  std::optional<std::size_t> location_index(std::string_view id) const;
  std::optional<std::size_t> clock_index(std::string_view name) const;
  std::optional<std::size_t> variable_index(std::string_view name) const;
  bool is_input(std::string_view action) const;
  bool is_output(std::string_view action) const;
  bool is_clock(std::string_view name) const { return clock_index(name).has_value(); }

  // Inputs then outputs, in declaration order.
  std::vector<std::string> alphabet() const;

  // Largest absolute clock constant in guards and invariants (at least 0).
  std::int32_t max_clock_constant() const;
};

struct Diagnostic {
  // "line 3" for syntax problems, a field path such as
  // "edges[2].guard[0].operand" for semantic ones.
  std::string where;
  std::string message;

  std::string to_string() const;
};

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Raised when a move has two enabled edges; a valid caller never sees it
// because nondeterministic models are rejected up front.
class NondeterminismError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural checks. An empty result means the model is valid.
std::vector<Diagnostic> validate(const Tioa& model);

}  // namespace mbmt::tioa
