#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace cfdyn {

/// Closed interval [lo, hi] with lo <= hi.
class Interval {
 public:
  constexpr Interval() = default;
  /// Throws std::invalid_argument if lo > hi or either end is NaN.
  Interval(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

/// Finite disjoint union of closed intervals, kept in canonical form:
/// parts sorted, pairwise separated by more than the merge gap, and no part
/// shorter than the degeneracy threshold. The empty set has no parts.
class IntervalSet {
 public:
  /// Parts closer than this are merged. Preimage endpoints are Möbius images
  /// and carry a few ulps of error, which would otherwise fragment the set.
  static constexpr double kMergeGap = 1e-14;
  /// Parts shorter than this are dropped.
  static constexpr double kDegenerate = 1e-16;

  IntervalSet() = default;
  explicit IntervalSet(const Interval& iv);
  IntervalSet(std::initializer_list<Interval> parts);
  explicit IntervalSet(std::vector<Interval> parts);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  double measure() const;
  bool contains(double x) const;
  /// Smallest interval containing the set; the set must be nonempty.
  Interval hull() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet intersect(const IntervalSet& s, const Interval& iv);
IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
/// Closure of a \ b.
IntervalSet subtract(const IntervalSet& a, const IntervalSet& b);
/// Closure of domain \ s.
IntervalSet complement(const IntervalSet& s, const Interval& domain);

inline double measure(const IntervalSet& s) { return s.measure(); }
double symmetric_difference_measure(const IntervalSet& a, const IntervalSet& b);

}  // namespace cfdyn
