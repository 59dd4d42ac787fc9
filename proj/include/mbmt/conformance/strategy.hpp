#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbmt/zones/federation.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::conformance {

enum class RuleKind { Input, Delay, OutputAwait };

std::string rule_kind_name(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view text);

// Discrete product state by name, so a strategy file stands on its own.
struct StrategyKey {
  std::string spec_loc;
  std::string mut_loc;
  std::vector<std::int32_t> spec_vars;
  std::vector<std::int32_t> mut_vars;

  auto operator<=>(const StrategyKey&) const = default;
};

struct RuleCondition {
  StrategyKey key;
  zones::Federation zone{1};
};

struct Rule {
  RuleKind kind = RuleKind::Delay;
  std::string action;  // input label for Input rules, empty otherwise
  std::vector<RuleCondition> conditions;
};

// A positional strategy over the product of the completed spec and the
// completed mutant. Rule conditions are pairwise disjoint.
struct Strategy {
  std::string mutant;
  std::string goal;
  bool cooperative = false;
  // Product clocks in Dbm order, reference clock excluded.
  std::vector<std::string> clocks;
  std::vector<Rule> rules;

  std::size_t dimension() const { return clocks.size() + 1; }

  // The rule whose condition holds at (key, point), if any. `point` has a
  // leading 0 for the reference clock.
  const Rule* match(const StrategyKey& key, std::span<const Rational> point) const;

  // Every (rule, zone) pair attached to `key`.
  std::vector<std::pair<const Rule*, const zones::Federation*>> conditions_at(
      const StrategyKey& key) const;

  bool operator==(const Strategy& other) const;
};

std::string serialize_strategy(const Strategy& s);
// Throws std::runtime_error with the offending field path.
Strategy parse_strategy(std::string_view text);

void save_strategy(const Strategy& s, const std::filesystem::path& path);
Strategy load_strategy(const std::filesystem::path& path);

}  // namespace mbmt::conformance
