#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mbmt/tioa/model.hpp"
#include "mbmt/tioa/symbolic.hpp"
#include "mbmt/zones/federation.hpp"

namespace mbmt::conformance {

// Thrown for conditions that make a run meaningless rather than failing:
// nondeterministic inputs, exhausted iteration caps.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Discrete part of a product state.
struct ProductKey {
  std::size_t spec_loc = 0;
  std::size_t mut_loc = 0;
  std::vector<std::int32_t> spec_vars;
  std::vector<std::int32_t> mut_vars;

  auto operator<=>(const ProductKey&) const = default;
};

enum class MoveKind { Input, Output };

// A synchronized move: both sides take one edge on the same action.
struct ProductTransition {
  MoveKind kind = MoveKind::Input;
  std::string action;
  std::size_t spec_edge = 0;
  std::size_t mut_edge = 0;
  zones::Federation zone{1};  // where both edges are enabled, both invariants hold
  std::vector<std::size_t> resets;
  std::size_t target = 0;
};

struct KeyInfo {
  ProductKey key;
  zones::Dbm inv_spec = zones::Dbm::universe(1);
  zones::Dbm inv_mut = zones::Dbm::universe(1);
  zones::Dbm inv_both = zones::Dbm::universe(1);
  // The mutant may be here, the model may not: a delay already diverged.
  zones::Federation goal_delay{1};
  // Mutant output enabled, spec cannot match; per output label.
  std::vector<std::pair<std::string, zones::Federation>> unmatched;
  zones::Federation unmatched_any{1};
  // Some mutant output enabled (matched or not).
  zones::Federation output_any{1};
  // Mutant at a weak invariant bound: it cannot let time pass.
  zones::Federation mut_deadline{1};
  std::vector<ProductTransition> transitions;
};

// The product of a demonically completed spec and an angelically completed
// mutant. Clock 0 is the reference, then the model clocks, then the mutant
// clocks. Keys are every discrete combination reachable by edge moves,
// ignoring clocks, so the set over-approximates reachability.
class Product {
 public:
  Product(const tioa::Tioa& spec, const tioa::Tioa& mut);

  const tioa::Tioa& spec() const { return spec_; }
  const tioa::Tioa& mut() const { return mut_; }
  std::size_t dimension() const { return dim_; }
  const tioa::ClockSpace& spec_space() const { return spec_space_; }
  const tioa::ClockSpace& mut_space() const { return mut_space_; }
  // "x.spec", ..., "x.mut", ... indexed like Dbm clocks minus one.
  const std::vector<std::string>& clock_names() const { return clock_names_; }

  const std::vector<KeyInfo>& keys() const { return keys_; }
  std::size_t initial() const { return 0; }
  std::optional<std::size_t> find(const ProductKey& key) const;

  std::string describe(const ProductKey& key) const;

 private:
  std::size_t intern(const ProductKey& key);
  void expand(std::size_t index);

  const tioa::Tioa& spec_;
  const tioa::Tioa& mut_;
  std::size_t dim_;
  tioa::ClockSpace spec_space_;
  tioa::ClockSpace mut_space_;
  std::vector<std::string> clock_names_;
  std::vector<KeyInfo> keys_;
  std::map<ProductKey, std::size_t> index_;
};

}  // namespace mbmt::conformance
