#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cfdyn/interval.hpp"
#include "cfdyn/rng.hpp"

using namespace cfdyn;

namespace {

IntervalSet random_set(Rng& rng, int parts) {
  std::vector<Interval> v;
  for (int i = 0; i < parts; ++i) {
    double a = rng.uniform(0.0, 10.0);
    double b = rng.uniform(0.0, 10.0);
    v.emplace_back(std::min(a, b), std::max(a, b));
  }
  return IntervalSet(std::move(v));
}

}  // namespace

TEST_SUITE("interval") {
  TEST_CASE("measure of simple sets") {
    CHECK(IntervalSet{Interval(0, 1), Interval(2, 2.5)}.measure() == doctest::Approx(1.5));
    CHECK(IntervalSet{}.measure() == 0.0);
    CHECK(IntervalSet(Interval(std::sqrt(2.0) - 1.0, std::sqrt(2.0))).measure() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("bad intervals are rejected") {
    CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Interval(NAN, 1.0), std::invalid_argument);
  }

  TEST_CASE("canonical form merges overlaps and drops slivers") {
    IntervalSet s{Interval(3, 4), Interval(0, 1), Interval(0.5, 2), Interval(5, 5)};
    REQUIRE(s.size() == 2);
    CHECK(s.parts()[0] == Interval(0, 2));
    CHECK(s.parts()[1] == Interval(3, 4));
    IntervalSet t{Interval(0, 1), Interval(1 + 1e-15, 2)};
    CHECK(t.size() == 1);
  }

  TEST_CASE("contains, hull, complement, subtract") {
    IntervalSet s{Interval(0, 1), Interval(2, 3)};
    CHECK(s.contains(0.5));
    CHECK(s.contains(3.0));
    CHECK_FALSE(s.contains(1.5));
    CHECK(s.hull() == Interval(0, 3));
    IntervalSet c = complement(s, Interval(-1, 4));
    CHECK(c.measure() == doctest::Approx(3.0));
    CHECK(c.size() == 3);
    CHECK(subtract(s, IntervalSet(Interval(0.5, 2.5))).measure() == doctest::Approx(1.0));
    CHECK(intersect(s, Interval(0.5, 2.5)).measure() == doctest::Approx(1.0));
  }

  TEST_CASE("inclusion-exclusion and algebra on random sets") {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
      IntervalSet a = random_set(rng, 1 + trial % 5);
      IntervalSet b = random_set(rng, 1 + trial % 7);
      double lhs = unite(a, b).measure() + intersect(a, b).measure();
      CHECK(lhs == doctest::Approx(a.measure() + b.measure()).epsilon(1e-12));
      CHECK(unite(a, b) == unite(b, a));
      CHECK(intersect(a, b) == intersect(b, a));
      CHECK(unite(a, a) == a);
      CHECK(intersect(a, a) == a);
      CHECK(symmetric_difference_measure(a, b) >= -1e-12);
      CHECK(symmetric_difference_measure(a, a) == doctest::Approx(0.0));
    }
  }
}
