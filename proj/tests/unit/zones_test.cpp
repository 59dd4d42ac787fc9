#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "mbmt/zones/federation.hpp"

using namespace mbmt;
using namespace mbmt::zones;

namespace {

// Brute-force membership over a quarter grid. With integer constants of
// magnitude at most 5, every non-empty region cut out by single-clock and
// difference constraints over two clocks has a point on the grid 0..11, so
// agreement on the grid is set equality. Coordinates are in quarters.
constexpr int kGridMax = 44;
constexpr int kDelayMax = 48;

using Point = std::vector<int>;
using Pred = std::function<bool(const Point&)>;

std::vector<Point> grid(std::size_t dim) {
  std::vector<Point> out;
  if (dim == 2) {
    for (int a = 0; a <= kGridMax; ++a) out.push_back({0, a});
  } else {
    for (int a = 0; a <= kGridMax; ++a)
      for (int b = 0; b <= kGridMax; ++b) out.push_back({0, a, b});
  }
  return out;
}

std::vector<Rational> exact(const Point& p) {
  std::vector<Rational> out;
  for (int q : p) out.push_back(Rational(q, 4));
  return out;
}

Point shift(const Point& p, int d) {
  Point out = p;
  for (std::size_t i = 1; i < out.size(); ++i) out[i] += d;
  return out;
}

struct Constraint {
  std::size_t i, j;
  Bound b;
};

bool satisfies(const Point& p, const Constraint& c) {
  const int diff = p[c.i] - p[c.j];
  if (c.b.is_infinite()) return true;
  return c.b.is_strict() ? diff < 4 * c.b.value() : diff <= 4 * c.b.value();
}

class ZoneGen {
 public:
  explicit ZoneGen(std::uint64_t seed) : rng_(seed) {}

  std::size_t dimension() { return pick(1, 2) + 1; }

  std::pair<Dbm, Pred> zone(std::size_t dim) {
    std::vector<Constraint> cs;
    const int n = pick(0, 3);
    for (int k = 0; k < n; ++k) {
      std::size_t i = pick(0, int(dim) - 1), j = pick(0, int(dim) - 1);
      if (i == j) continue;
      const int c = pick(-5, 5);
      cs.push_back({i, j, pick(0, 1) ? Bound::weak(c) : Bound::strict(c)});
    }
    Dbm z = Dbm::universe(dim);
    for (const Constraint& c : cs) z.constrain(c.i, c.j, c.b);
    return {z, [cs](const Point& p) {
              for (std::size_t i = 1; i < p.size(); ++i)
                if (p[i] < 0) return false;
              for (const Constraint& c : cs)
                if (!satisfies(p, c)) return false;
              return true;
            }};
  }

  std::pair<Federation, Pred> federation(std::size_t dim) {
    Federation f(dim);
    std::vector<Pred> parts;
    const int n = pick(0, 3);
    for (int k = 0; k < n; ++k) {
      auto [z, p] = zone(dim);
      f.add(z);
      parts.push_back(p);
    }
    return {f, [parts](const Point& p) {
              for (const Pred& q : parts)
                if (q(p)) return true;
              return false;
            }};
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

void expect_same(const Federation& f, const Pred& oracle, const std::string& what) {
  for (const Point& p : grid(f.dimension())) {
    ASSERT_EQ(f.contains(exact(p)), oracle(p))
        << what << " at quarters (" << p[1] << (p.size() > 2 ? ", " + std::to_string(p[2]) : "")
        << ") " << f.to_string();
  }
}

void expect_same(const Dbm& z, const Pred& oracle, const std::string& what) {
  expect_same(Federation(z), oracle, what);
}

bool canonical(const Dbm& z) {
  if (z.is_empty()) return true;
  const std::size_t n = z.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    if (z.at(i, i) != Bound::zero()) return false;
    if (z.at(0, i) > Bound::zero()) return false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (z.at(i, j) > z.at(i, k) + z.at(k, j)) return false;
  }
  return true;
}

constexpr int kTrials = 150;

}  // namespace

TEST(Bound, OrderIsValueThenStrictness) {
  EXPECT_LT(Bound::strict(3), Bound::weak(3));
  EXPECT_LT(Bound::weak(2), Bound::strict(3));
  EXPECT_LT(Bound::weak(1000), Bound::infinity());
  EXPECT_TRUE(Bound::infinity().is_strict());
  EXPECT_EQ(Bound::weak(2) + Bound::strict(3), Bound::strict(5));
  EXPECT_EQ(Bound::weak(4).negated(), Bound::strict(-4));
}

TEST(Dbm, CanonicalizeExamples) {
  Dbm zero = Dbm::zero(3);
  Dbm again = zero;
  again.intersect(Dbm::universe(3));
  EXPECT_EQ(again, zero);

  Dbm contradiction = Dbm::universe(2);
  contradiction.constrain(1, 0, Bound::weak(2));
  EXPECT_FALSE(contradiction.constrain(0, 1, Bound::weak(-3)));
  EXPECT_TRUE(contradiction.is_empty());

  // x <= 3 and y - x <= 1 tighten y to y <= 4.
  Dbm z = Dbm::universe(3);
  z.constrain(1, 0, Bound::weak(3));
  z.constrain(2, 1, Bound::weak(1));
  EXPECT_EQ(z.at(2, 0), Bound::weak(4));
}

TEST(Dbm, UpExamples) {
  Dbm z = Dbm::zero(3);
  z.up();
  EXPECT_TRUE(z.at(1, 0).is_infinite());
  EXPECT_EQ(z.at(1, 2), Bound::zero());
  EXPECT_EQ(z.at(2, 1), Bound::zero());

  Dbm w = Dbm::zero(3);
  w.constrain(0, 1, Bound::weak(-1));  // forces emptiness: x = 0 already
  EXPECT_TRUE(w.is_empty());

  Dbm p = Dbm::universe(3);
  p.constrain(1, 0, Bound::weak(1));
  p.constrain(0, 1, Bound::weak(-1));
  p.constrain(2, 0, Bound::weak(0));
  p.up();
  EXPECT_EQ(p.at(1, 2), Bound::weak(1));
  EXPECT_EQ(p.at(2, 1), Bound::weak(-1));
  EXPECT_EQ(p.at(0, 1), Bound::weak(-1));
  Dbm twice = p;
  twice.up();
  EXPECT_EQ(twice, p);
}

TEST(Dbm, ConstrainExamples) {
  Dbm z = Dbm::zero(2);
  EXPECT_FALSE(z.constrain(0, 1, Bound::strict(-4)));

  Dbm u = Dbm::zero(3);
  u.up();
  u.constrain(0, 1, Bound::strict(-4));
  u.constrain(1, 0, Bound::weak(5));
  EXPECT_EQ(u.at(0, 1), Bound::strict(-4));
  EXPECT_EQ(u.at(1, 0), Bound::weak(5));
  EXPECT_EQ(u.at(2, 0), Bound::weak(5));
  EXPECT_EQ(u.at(1, 2), Bound::zero());

  Dbm same = u;
  same.intersect(Dbm::universe(3));
  EXPECT_EQ(same, u);
}

TEST(Dbm, ResetExample) {
  // {1 < x <= 4, y = x} reset x gives {x = 0, 1 < y <= 4}.
  Dbm z = Dbm::universe(3);
  z.constrain(0, 1, Bound::strict(-1));
  z.constrain(1, 0, Bound::weak(4));
  z.constrain(1, 2, Bound::zero());
  z.constrain(2, 1, Bound::zero());
  z.reset(1);
  EXPECT_EQ(z.at(1, 0), Bound::zero());
  EXPECT_EQ(z.at(0, 1), Bound::zero());
  EXPECT_EQ(z.at(0, 2), Bound::strict(-1));
  EXPECT_EQ(z.at(2, 0), Bound::weak(4));

  Dbm all = Dbm::universe(3);
  all.reset(1);
  all.reset(2);
  EXPECT_EQ(all, Dbm::zero(3));
}

TEST(Federation, IncludesExamples) {
  Dbm x2 = Dbm::universe(2);
  x2.constrain(1, 0, Bound::weak(2));
  Dbm x3 = Dbm::universe(2);
  x3.constrain(1, 0, Bound::weak(3));
  EXPECT_TRUE(Federation(x2).includes(Federation(x2)));
  EXPECT_TRUE(Federation::universe(2).includes(Federation(x3)));
  EXPECT_FALSE(Federation(x2).includes(Federation(x3)));
}

TEST(Federation, SubtractExamples) {
  Dbm a = Dbm::universe(2);
  a.constrain(1, 0, Bound::weak(3));
  EXPECT_TRUE(subtract(a, a).is_empty());
  EXPECT_TRUE((Federation(a) - Federation(2)).same_set(Federation(a)));

  Dbm above4 = Dbm::universe(2);
  above4.constrain(0, 1, Bound::strict(-4));
  const Federation rest = subtract(Dbm::universe(2), above4);
  ASSERT_EQ(rest.size(), 1u);
  EXPECT_EQ(rest.zones()[0].at(1, 0), Bound::weak(4));
}

TEST(Dbm, WitnessPrefersMidpoints) {
  Dbm z = Dbm::universe(2);
  z.constrain(0, 1, Bound::strict(-3));
  z.constrain(1, 0, Bound::weak(4));
  EXPECT_EQ(z.witness().value()[1], Rational(7, 2));

  Dbm open = Dbm::universe(2);
  open.constrain(0, 1, Bound::strict(-4));
  EXPECT_EQ(open.witness().value()[1], Rational(5));

  Dbm narrow = Dbm::universe(3);
  narrow.constrain(0, 1, Bound::strict(-1));
  narrow.constrain(1, 0, Bound::strict(2));
  narrow.constrain(2, 1, Bound::strict(0));
  narrow.constrain(0, 2, Bound::strict(-1));
  const auto w = narrow.witness().value();
  EXPECT_TRUE(narrow.contains(w));
}

TEST(DbmProperty, ConstrainAgreesWithGrid) {
  ZoneGen gen(1);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = gen.dimension();
    auto [z, p] = gen.zone(dim);
    EXPECT_TRUE(canonical(z));
    expect_same(z, p, "constrain");
    Dbm again = z;
    again.intersect(z);
    EXPECT_EQ(again, z);
  }
}

TEST(DbmProperty, UpDownAgreeWithGrid) {
  ZoneGen gen(2);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = gen.dimension();
    auto [z, p] = gen.zone(dim);
    Dbm up = z;
    up.up();
    EXPECT_TRUE(canonical(up));
    expect_same(up, [&](const Point& v) {
      for (int d = 0; d <= kDelayMax; ++d) {
        const Point back = shift(v, -d);
        bool ok = true;
        for (std::size_t i = 1; i < back.size(); ++i) ok = ok && back[i] >= 0;
        if (ok && p(back)) return true;
      }
      return false;
    }, "up");
    Dbm down = z;
    down.down();
    EXPECT_TRUE(canonical(down));
    expect_same(down, [&](const Point& v) {
      for (int d = 0; d <= kDelayMax; ++d)
        if (p(shift(v, d))) return true;
      return false;
    }, "down");
  }
}

TEST(DbmProperty, ResetAndFreeAgreeWithGrid) {
  ZoneGen gen(3);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = gen.dimension();
    auto [z, p] = gen.zone(dim);
    const std::size_t c = gen.pick(1, int(dim) - 1);
    auto some_value = [&](const Point& v) {
      for (int y = 0; y <= 2 * kGridMax; ++y) {
        Point w = v;
        w[c] = y;
        if (p(w)) return true;
      }
      return false;
    };
    Dbm r = z;
    r.reset(c);
    EXPECT_TRUE(canonical(r));
    expect_same(r, [&](const Point& v) { return v[c] == 0 && some_value(v); }, "reset");
    Dbm f = z;
    f.free(c);
    EXPECT_TRUE(canonical(f));
    expect_same(f, some_value, "free");
  }
}

TEST(FederationProperty, SetAlgebraAgreesWithGrid) {
  ZoneGen gen(4);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = gen.dimension();
    auto [a, pa] = gen.federation(dim);
    auto [b, pb] = gen.federation(dim);
    expect_same(a | b, [&](const Point& v) { return pa(v) || pb(v); }, "union");
    expect_same(a & b, [&](const Point& v) { return pa(v) && pb(v); }, "intersection");
    const Federation diff = a - b;
    expect_same(diff, [&](const Point& v) { return pa(v) && !pb(v); }, "subtract");
    EXPECT_TRUE(a.includes(diff));
    EXPECT_TRUE((diff & b).is_empty());
    for (const Dbm& z : diff.zones()) EXPECT_TRUE(canonical(z));

    bool grid_subset = true;
    for (const Point& v : grid(dim)) grid_subset = grid_subset && (!pb(v) || pa(v));
    EXPECT_EQ(a.includes(b), grid_subset) << a.to_string() << " vs " << b.to_string();
    EXPECT_TRUE(a.includes(a));
  }
}

TEST(FederationProperty, IncludesIsTransitive) {
  ZoneGen gen(5);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = gen.dimension();
    auto [a, pa] = gen.federation(dim);
    auto [b, pb] = gen.federation(dim);
    const Federation ab = a | b;
    const Federation abc = ab | gen.federation(dim).first;
    EXPECT_TRUE(ab.includes(a));
    EXPECT_TRUE(abc.includes(ab));
    EXPECT_TRUE(abc.includes(a));
  }
}

TEST(FederationProperty, TimedPredecessorAgreesWithGrid) {
  ZoneGen gen(6);
  for (int t = 0; t < kTrials; ++t) {
    const std::size_t dim = gen.dimension();
    auto [good, pg] = gen.federation(dim);
    auto [bad, pb] = gen.federation(dim);
    // Between quarter steps the region along a delay line does not change.
    expect_same(timed_predecessor(good, bad), [&](const Point& v) {
      for (int d = 0; d <= kDelayMax; ++d) {
        const Point w = shift(v, d);
        if (pb(w)) return false;
        if (pg(w)) return true;
      }
      return false;
    }, "timed_predecessor");
  }
}

TEST(Rational, DecimalRoundTrip) {
  EXPECT_EQ(to_decimal(Rational(7, 2)), "3.5");
  EXPECT_EQ(to_decimal(Rational(5)), "5");
  EXPECT_EQ(to_decimal(Rational(1, 3)), "0.333333");
  EXPECT_EQ(parse_decimal("0.125").value(), Rational(1, 8));
  EXPECT_EQ(parse_decimal("12").value(), Rational(12));
  EXPECT_FALSE(parse_decimal("1.2.3").has_value());
  EXPECT_FALSE(parse_decimal("abc").has_value());
}
