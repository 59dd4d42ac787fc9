#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mbmt/zones/dbm.hpp"

namespace mbmt::zones {

// A finite union of non-empty canonical zones over one clock set. Members
// may overlap; a member included in another member is dropped on insertion.
class Federation {
 public:
  explicit Federation(std::size_t dimension) : dim_(dimension) {}
  explicit Federation(Dbm zone);

  static Federation universe(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  const std::vector<Dbm>& zones() const { return zones_; }
  std::size_t size() const { return zones_.size(); }
  bool is_empty() const { return zones_.empty(); }

  void add(Dbm zone);
  Federation& operator|=(const Federation& other);
  Federation& operator&=(const Dbm& zone);
  Federation& operator&=(const Federation& other);
  Federation& operator-=(const Dbm& zone);
  Federation& operator-=(const Federation& other);

  void up();
  void down();
  void reset(std::size_t clock);
  void free(std::size_t clock);

  // Exact: true iff every valuation of `other` lies in this federation.
  bool includes(const Federation& other) const;
  bool includes(const Dbm& zone) const;
  bool intersects(const Dbm& zone) const;
  bool contains(std::span<const Rational> point) const;

  // Same set of valuations (not the same representation).
  bool same_set(const Federation& other) const;

  std::string to_string() const;

 private:
  std::size_t dim_;
  std::vector<Dbm> zones_;
};

Federation operator|(Federation a, const Federation& b);
Federation operator&(Federation a, const Federation& b);
Federation operator-(Federation a, const Federation& b);

// Exact a \ b. Pieces are pairwise disjoint; single-clock bounds of `b` are
// split on before difference bounds, so box minus box stays a set of boxes.
Federation subtract(const Dbm& a, const Dbm& b);

// Valuations that can let time pass into `good` while never touching `bad`
// on the way, the endpoint included.
Federation timed_predecessor(const Federation& good, const Federation& bad);

}  // namespace mbmt::zones
