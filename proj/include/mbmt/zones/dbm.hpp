#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbmt/zones/bound.hpp"
#include "mbmt/zones/interval.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::zones {

// Difference-bound matrix over clocks 1..n, with index 0 the constant-zero
// reference clock. Entry (i, j) bounds x_i - x_j.
//
// Every public operation leaves the matrix canonical (all-pairs shortest
// paths) or marks it empty. An empty Dbm stays empty.
class Dbm {
 public:
  // All valuations with every clock >= 0.
  static Dbm universe(std::size_t dimension);
  // The single valuation with every clock = 0.
  static Dbm zero(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  Bound at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
  bool is_empty() const { return empty_; }

  // Intersects with x_i - x_j ≺ c. Returns false when the result is empty.
  bool constrain(std::size_t i, std::size_t j, Bound bound);
  bool intersect(const Dbm& other);

  // Future: drop all upper bounds.
  void up();
  // Past: drop all lower bounds (down to zero).
  void down();
  void reset(std::size_t clock);
  // Forgets everything about `clock` except x >= 0.
  void free(std::size_t clock);
  // Classic max-constant extrapolation. Only used by the forward
  // determinism analysis, where exploration would otherwise not terminate.
  void extrapolate(std::int32_t max_constant);

  // True iff `other` ⊆ this. Both must share a dimension.
  bool includes(const Dbm& other) const;
  bool intersects(const Dbm& other) const;

  // `point` holds one value per clock, index 0 included (and equal to 0).
  bool contains(std::span<const Rational> point) const;

  // {d >= 0 : point + d ∈ zone}; the zone is convex so this is an interval.
  DelayInterval delay_interval(std::span<const Rational> point) const;

  // A member valuation, preferring midpoints of open ranges and small
  // denominators (halves first).
  std::optional<std::vector<Rational>> witness() const;

  bool operator==(const Dbm& other) const;
  std::size_t hash() const;

  std::string to_string() const;

 private:
  explicit Dbm(std::size_t dimension);
  Bound& ref(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
  void close();

  std::size_t dim_ = 1;
  std::vector<Bound> m_;
  bool empty_ = false;
};

}  // namespace mbmt::zones
