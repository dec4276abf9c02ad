#include "cfdyn/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cfdyn {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw std::invalid_argument("Interval: need lo <= hi, got [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
}

namespace {

std::vector<Interval> canonicalize(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
  std::vector<Interval> out;
  out.reserve(parts.size());
  for (const auto& iv : parts) {
    if (!out.empty() && iv.lo() - out.back().hi() < IntervalSet::kMergeGap) {
      if (iv.hi() > out.back().hi()) out.back() = Interval(out.back().lo(), iv.hi());
      continue;
    }
    out.push_back(iv);
  }
  std::erase_if(out, [](const Interval& iv) { return iv.length() < IntervalSet::kDegenerate; });
  return out;
}

}  // namespace

IntervalSet::IntervalSet(const Interval& iv) : IntervalSet(std::vector<Interval>{iv}) {}

IntervalSet::IntervalSet(std::initializer_list<Interval> parts)
    : IntervalSet(std::vector<Interval>(parts)) {}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(canonicalize(std::move(parts))) {}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo(); });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

Interval IntervalSet::hull() const {
  if (parts_.empty()) throw std::logic_error("IntervalSet::hull of empty set");
  return {parts_.front().lo(), parts_.back().hi()};
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalSet(std::move(parts));
}

IntervalSet intersect(const IntervalSet& s, const Interval& iv) {
  std::vector<Interval> parts;
  for (const auto& p : s.parts()) {
    double lo = std::max(p.lo(), iv.lo());
    double hi = std::min(p.hi(), iv.hi());
    if (lo <= hi) parts.emplace_back(lo, hi);
  }
  return IntervalSet(std::move(parts));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> parts;
  const auto& pa = a.parts();
  const auto& pb = b.parts();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    double lo = std::max(pa[i].lo(), pb[j].lo());
    double hi = std::min(pa[i].hi(), pb[j].hi());
    if (lo <= hi) parts.emplace_back(lo, hi);
    if (pa[i].hi() < pb[j].hi()) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(parts));
}

IntervalSet complement(const IntervalSet& s, const Interval& domain) {
  std::vector<Interval> parts;
  double cursor = domain.lo();
  for (const auto& p : s.parts()) {
    if (p.hi() < domain.lo()) continue;
    if (p.lo() > domain.hi()) break;
    if (p.lo() > cursor) parts.emplace_back(cursor, p.lo());
    cursor = std::max(cursor, p.hi());
  }
  if (cursor < domain.hi()) parts.emplace_back(cursor, domain.hi());
  return IntervalSet(std::move(parts));
}

IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
  if (a.empty()) return {};
  return intersect(a, complement(b, a.hull()));
}

double symmetric_difference_measure(const IntervalSet& a, const IntervalSet& b) {
  return unite(a, b).measure() - intersect(a, b).measure();
}

}  // namespace cfdyn
