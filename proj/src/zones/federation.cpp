#include "mbmt/zones/federation.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace mbmt::zones {

Federation::Federation(Dbm zone) : dim_(zone.dimension()) {
  add(std::move(zone));
}

Federation Federation::universe(std::size_t dimension) {
  return Federation(Dbm::universe(dimension));
}

void Federation::add(Dbm zone) {
  assert(zone.dimension() == dim_);
  if (zone.is_empty()) return;
  for (const Dbm& existing : zones_) {
    if (existing.includes(zone)) return;
  }
  std::erase_if(zones_, [&](const Dbm& existing) { return zone.includes(existing); });
  zones_.push_back(std::move(zone));
}

Federation& Federation::operator|=(const Federation& other) {
  for (const Dbm& z : other.zones_) add(z);
  return *this;
}

Federation& Federation::operator&=(const Dbm& zone) {
  std::vector<Dbm> old = std::move(zones_);
  zones_.clear();
  for (Dbm& z : old) {
    if (z.intersect(zone)) add(std::move(z));
  }
  return *this;
}

Federation& Federation::operator&=(const Federation& other) {
  std::vector<Dbm> old = std::move(zones_);
  zones_.clear();
  for (const Dbm& a : old) {
    for (const Dbm& b : other.zones_) {
      Dbm piece = a;
      if (piece.intersect(b)) add(std::move(piece));
    }
  }
  return *this;
}

Federation subtract(const Dbm& a, const Dbm& b) {
  Federation out(a.dimension());
  if (a.is_empty()) return out;
  if (!a.intersects(b)) {
    out.add(a);
    return out;
  }
  const std::size_t dim = a.dimension();
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 1; i < dim; ++i) {
    order.emplace_back(i, 0);
    order.emplace_back(0, i);
  }
  for (std::size_t i = 1; i < dim; ++i) {
    for (std::size_t j = 1; j < dim; ++j) {
      if (i != j) order.emplace_back(i, j);
    }
  }
  Dbm rest = a;
  for (const auto& [i, j] : order) {
    const Bound cut = b.at(i, j);
    if (cut.is_infinite() || !(cut < rest.at(i, j))) continue;
    Dbm piece = rest;
    if (piece.constrain(j, i, cut.negated())) out.add(std::move(piece));
    if (!rest.constrain(i, j, cut)) break;
  }
  return out;
}

Federation& Federation::operator-=(const Dbm& zone) {
  std::vector<Dbm> old = std::move(zones_);
  zones_.clear();
  for (const Dbm& z : old) {
    if (zone.includes(z)) continue;
    *this |= subtract(z, zone);
  }
  return *this;
}

Federation& Federation::operator-=(const Federation& other) {
  for (const Dbm& z : other.zones_) {
    if (zones_.empty()) break;
    *this -= z;
  }
  return *this;
}

namespace {

template <typename Op>
void rebuild(std::vector<Dbm>& zones, std::size_t dim, Op op) {
  Federation tmp(dim);
  for (Dbm& z : zones) {
    op(z);
    tmp.add(std::move(z));
  }
  zones = tmp.zones();
}

}  // namespace

void Federation::up() {
  rebuild(zones_, dim_, [](Dbm& z) { z.up(); });
}

void Federation::down() {
  rebuild(zones_, dim_, [](Dbm& z) { z.down(); });
}

void Federation::reset(std::size_t clock) {
  rebuild(zones_, dim_, [clock](Dbm& z) { z.reset(clock); });
}

void Federation::free(std::size_t clock) {
  rebuild(zones_, dim_, [clock](Dbm& z) { z.free(clock); });
}

bool Federation::includes(const Dbm& zone) const {
  if (zone.is_empty()) return true;
  for (const Dbm& z : zones_) {
    if (z.includes(zone)) return true;
  }
  Federation rest(zone);
  rest -= *this;
  return rest.is_empty();
}

bool Federation::includes(const Federation& other) const {
  for (const Dbm& z : other.zones_) {
    if (!includes(z)) return false;
  }
  return true;
}

bool Federation::intersects(const Dbm& zone) const {
  return std::any_of(zones_.begin(), zones_.end(),
                     [&](const Dbm& z) { return z.intersects(zone); });
}

bool Federation::contains(std::span<const Rational> point) const {
  return std::any_of(zones_.begin(), zones_.end(),
                     [&](const Dbm& z) { return z.contains(point); });
}

bool Federation::same_set(const Federation& other) const {
  return includes(other) && other.includes(*this);
}

std::string Federation::to_string() const {
  if (zones_.empty()) return "false";
  std::string out;
  for (const Dbm& z : zones_) {
    if (!out.empty()) out += " || ";
    out += "(" + z.to_string() + ")";
  }
  return out;
}

Federation operator|(Federation a, const Federation& b) { return a |= b; }
Federation operator&(Federation a, const Federation& b) { return a &= b; }
Federation operator-(Federation a, const Federation& b) { return a -= b; }

namespace {

// Convex `bad`: either the time line from v never meets bad and reaches good,
// or it reaches a point of good strictly before entering bad.
Federation predecessor_avoiding(const Dbm& good, const Dbm& bad) {
  Dbm bad_past = bad;
  bad_past.down();
  Dbm good_past = good;
  good_past.down();

  Federation out = subtract(good_past, bad_past);
  Dbm early = good;
  if (early.intersect(bad_past)) {
    Federation before = subtract(early, bad);
    before.down();
    out |= before;
  }
  return out;
}

}  // namespace

Federation timed_predecessor(const Federation& good, const Federation& bad) {
  Federation out(good.dimension());
  for (const Dbm& g : good.zones()) {
    if (bad.is_empty()) {
      Dbm past = g;
      past.down();
      out.add(std::move(past));
      continue;
    }
    // One delay that works for every convex piece of bad: take the smallest.
    Federation acc = Federation::universe(good.dimension());
    for (const Dbm& b : bad.zones()) {
      acc &= predecessor_avoiding(g, b);
      if (acc.is_empty()) break;
    }
    out |= acc;
  }
  return out;
}

}  // namespace mbmt::zones
