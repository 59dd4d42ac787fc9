#include "mbmt/zones/dbm.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace mbmt::zones {

Dbm::Dbm(std::size_t dimension)
    : dim_(dimension), m_(dimension * dimension, Bound::infinity()) {
  assert(dimension >= 1);
}

Dbm Dbm::universe(std::size_t dimension) {
  Dbm z(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    z.ref(i, i) = Bound::zero();
    z.ref(0, i) = Bound::zero();
  }
  return z;
}

Dbm Dbm::zero(std::size_t dimension) {
  Dbm z(dimension);
  std::fill(z.m_.begin(), z.m_.end(), Bound::zero());
  return z;
}

void Dbm::close() {
  if (empty_) return;
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < dim_; ++i) {
      const Bound ik = at(i, k);
      if (ik.is_infinite()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        const Bound via = ik + at(k, j);
        if (via < at(i, j)) ref(i, j) = via;
      }
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      if (at(i, i) < Bound::zero()) {
        empty_ = true;
        return;
      }
    }
  }
}

bool Dbm::constrain(std::size_t i, std::size_t j, Bound bound) {
  if (empty_) return false;
  if (!(bound < at(i, j))) return true;
  if (at(j, i) + bound < Bound::zero()) {
    empty_ = true;
    return false;
  }
  ref(i, j) = bound;
  // The matrix was canonical, so a shortest path uses the new edge at most
  // once.
  for (std::size_t k = 0; k < dim_; ++k) {
    const Bound ki = at(k, i);
    if (ki.is_infinite()) continue;
    const Bound kij = ki + bound;
    for (std::size_t l = 0; l < dim_; ++l) {
      const Bound via = kij + at(j, l);
      if (via < at(k, l)) ref(k, l) = via;
    }
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    if (at(k, k) < Bound::zero()) {
      empty_ = true;
      return false;
    }
  }
  return true;
}

bool Dbm::intersect(const Dbm& other) {
  assert(other.dim_ == dim_);
  if (other.empty_) empty_ = true;
  if (empty_) return false;
  bool changed = false;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (other.m_[k] < m_[k]) {
      m_[k] = other.m_[k];
      changed = true;
    }
  }
  if (changed) close();
  return !empty_;
}

void Dbm::up() {
  if (empty_) return;
  for (std::size_t i = 1; i < dim_; ++i) ref(i, 0) = Bound::infinity();
}

void Dbm::down() {
  if (empty_) return;
  for (std::size_t j = 1; j < dim_; ++j) ref(0, j) = Bound::zero();
  close();
}

void Dbm::reset(std::size_t clock) {
  if (empty_) return;
  assert(clock > 0 && clock < dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    ref(clock, j) = at(0, j);
    ref(j, clock) = at(j, 0);
  }
  ref(clock, clock) = Bound::zero();
}

void Dbm::free(std::size_t clock) {
  if (empty_) return;
  assert(clock > 0 && clock < dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (j == clock) continue;
    ref(clock, j) = Bound::infinity();
    ref(j, clock) = at(j, 0);
  }
  ref(0, clock) = Bound::zero();
}

void Dbm::extrapolate(std::int32_t max_constant) {
  if (empty_) return;
  const Bound ceiling = Bound::weak(max_constant);
  const Bound floor = Bound::strict(-max_constant);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      Bound& b = ref(i, j);
      if (b.is_infinite()) continue;
      if (ceiling < b) {
        b = Bound::infinity();
      } else if (b < floor) {
        b = floor;
      }
    }
  }
  for (std::size_t j = 1; j < dim_; ++j) {
    if (Bound::zero() < at(0, j)) ref(0, j) = Bound::zero();
  }
  close();
}

bool Dbm::includes(const Dbm& other) const {
  assert(other.dim_ == dim_);
  if (other.empty_) return true;
  if (empty_) return false;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (m_[k] < other.m_[k]) return false;
  }
  return true;
}

bool Dbm::intersects(const Dbm& other) const {
  Dbm copy = *this;
  return copy.intersect(other);
}

namespace {

bool satisfies(const Rational& diff, Bound b) {
  if (b.is_infinite()) return true;
  const Rational c(b.value());
  return b.is_strict() ? diff < c : diff <= c;
}

}  // namespace

bool Dbm::contains(std::span<const Rational> point) const {
  assert(point.size() == dim_);
  if (empty_) return false;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i != j && !satisfies(point[i] - point[j], at(i, j))) return false;
    }
  }
  return true;
}

DelayInterval Dbm::delay_interval(std::span<const Rational> point) const {
  assert(point.size() == dim_);
  DelayInterval out;
  if (empty_) {
    out.empty = true;
    return out;
  }
  // Differences between real clocks are invariant under delay.
  for (std::size_t i = 1; i < dim_; ++i) {
    for (std::size_t j = 1; j < dim_; ++j) {
      if (i != j && !satisfies(point[i] - point[j], at(i, j))) {
        out.empty = true;
        return out;
      }
    }
  }
  for (std::size_t i = 1; i < dim_; ++i) {
    const Bound lower = at(0, i);
    if (!lower.is_infinite()) {
      DelayInterval piece;
      piece.lower = Rational(-lower.value()) - point[i];
      piece.lower_closed = !lower.is_strict();
      if (piece.lower < 0) {
        piece.lower = 0;
        piece.lower_closed = true;
      }
      out = zones::intersect(out, piece);
    }
    const Bound upper = at(i, 0);
    if (!upper.is_infinite()) {
      DelayInterval piece;
      piece.upper = Rational(upper.value()) - point[i];
      piece.upper_closed = !upper.is_strict();
      out = zones::intersect(out, piece);
    }
  }
  return out;
}

std::optional<std::vector<Rational>> Dbm::witness() const {
  if (empty_) return std::nullopt;
  for (std::int32_t scale = 2; scale <= (1 << 16); scale *= 2) {
    Dbm z(dim_);
    for (std::size_t k = 0; k < m_.size(); ++k) {
      const Bound b = m_[k];
      z.m_[k] = b.is_infinite() ? b
                : b.is_strict() ? Bound::strict(b.value() * scale)
                                : Bound::weak(b.value() * scale);
    }
    std::vector<Rational> values(dim_, Rational(0));
    bool ok = true;
    for (std::size_t i = 1; i < dim_ && ok; ++i) {
      const Bound lo = z.at(0, i);
      const Bound hi = z.at(i, 0);
      const std::int32_t low = -lo.value();
      std::int32_t pick;
      if (hi.is_infinite()) {
        pick = lo.is_strict() ? low + scale : low;
      } else if (hi.value() == low) {
        pick = low;
      } else if ((hi.value() + low) % 2 != 0) {
        ok = false;
        break;
      } else {
        pick = (hi.value() + low) / 2;
      }
      ok = z.constrain(i, 0, Bound::weak(pick)) &&
           z.constrain(0, i, Bound::weak(-pick));
      values[i] = Rational(pick, scale);
    }
    if (ok) return values;
  }
  return std::nullopt;
}

bool Dbm::operator==(const Dbm& other) const {
  if (dim_ != other.dim_ || empty_ != other.empty_) return false;
  return empty_ || m_ == other.m_;
}

std::size_t Dbm::hash() const {
  std::size_t h = dim_;
  for (const Bound b : m_) {
    h ^= std::hash<std::int32_t>{}(b.raw()) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

std::string Dbm::to_string() const {
  if (empty_) return "false";
  std::string out;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j || at(i, j).is_infinite()) continue;
      if (i == 0 && at(i, j) == Bound::zero()) continue;
      if (!out.empty()) out += " && ";
      std::string lhs = i == 0 ? "" : "x" + std::to_string(i);
      if (j != 0) lhs += (i == 0 ? "-x" : " - x") + std::to_string(j);
      out += lhs + " " + at(i, j).to_string();
    }
  }
  return out.empty() ? "true" : out;
}

}  // namespace mbmt::zones
