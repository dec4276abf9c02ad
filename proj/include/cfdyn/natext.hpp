#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfdyn/density.hpp"
#include "cfdyn/interval.hpp"
#include "cfdyn/maps.hpp"

namespace cfdyn {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// The two-dimensional map (x, y) -> (T x, eps N / (d + y)), eps and d the
/// digit data of the branch containing x.
class NatExtMap {
 public:
  explicit NatExtMap(CFMap base) : base_(std::move(base)) {}

  const CFMap& base() const { return base_; }
  Point apply(Point p) const;

 private:
  CFMap base_;
};

/// n_keep orbit points after n_burn discarded steps.
std::vector<Point> simulate_domain(const NatExtMap& nat, Point seed, std::size_t n_burn, std::size_t n_keep);

/// target = sign * N / (digit + source)
struct HeightEquation {
  std::string target;
  int sign = 1;
  int digit = 1;
  std::string source;
};

struct HeightSystem {
  int N = 2;
  std::vector<HeightEquation> equations;
};

struct HeightSolution {
  std::map<std::string, double> values;
  std::size_t iterations = 0;
  /// Largest equation residual at the solution; infinite heights count as exact.
  double residual = 0.0;

  double at(const std::string& name) const;
};

/// Jacobi fixed-point iteration from all heights = 1. Heights whose magnitude
/// passes 1e12 are pinned to +-infinity. Throws std::runtime_error when the
/// step size has not dropped below tol after max_iter sweeps.
HeightSolution solve_heights(const HeightSystem& system, std::size_t max_iter = 10'000, double tol = 1e-14);

/// Height systems for four_exp_12, four_exp_15, four_exp_24, two_exp_sqrt2 and
/// plateau (the six-height system of the N=2 greedy maps on the entropy plateau).
HeightSystem named_height_system(std::string_view name);

/// Right-continuous step function: values[i] on (cuts[i-1], cuts[i]).
struct StepFunction {
  std::vector<double> cuts;
  std::vector<double> values;
};

/// One x-column [x.lo, x.hi] x [lower, upper]; heights may be infinite.
struct Column {
  Interval x;
  double lower;
  double upper;
};

/// Union of columns over the base domain, columns sorted with disjoint
/// interiors covering the base interval.
class NatExtDomain {
 public:
  NatExtDomain(Interval base, std::vector<Column> columns);
  /// Columns from lower and upper boundary step functions, split at every cut.
  static NatExtDomain from_steps(Interval base, const StepFunction& lower, const StepFunction& upper);

  const Interval& base() const { return base_; }
  const std::vector<Column>& columns() const { return columns_; }
  bool bounded() const;
  double area() const;
  /// Copy with every occurrence of a height value shifted by delta.
  NatExtDomain perturbed(double height, double delta) const;

 private:
  Interval base_;
  std::vector<Column> columns_;
};

/// Axis-parallel rectangle in the (x, y) plane.
struct Rectangle {
  Interval x;
  Interval y;
};

/// Image of a union of rectangles; each is split at the branch cuts and every
/// piece maps to a rectangle. Heights must be finite.
std::vector<Rectangle> push_forward(const NatExtMap& nat, std::span<const Rectangle> rects);
/// Area of the symmetric difference of two finite unions of rectangles.
double symmetric_difference_area(std::span<const Rectangle> a, std::span<const Rectangle> b);

struct BijectivityReport {
  /// Area covered more than once by the images of the branch pieces.
  double overlap = 0.0;
  /// Area of the domain not covered by any image.
  double gap = 0.0;
  /// Area of the images lying outside the domain.
  double excess = 0.0;
  /// True when infinite heights made the area test meaningless.
  bool skipped = false;

  double worst() const { return std::max({overlap, gap, excess}); }
};

/// Pushes every column piece over every branch through the map (rectangles go to
/// rectangles) and measures how far the images are from tiling the domain.
BijectivityReport verify_bijectivity(const NatExtMap& nat, const NatExtDomain& domain);

/// x-marginal of N/(N+xy)^2 over the domain: per column U/(N+Ux) - L/(N+Lx).
/// Flagged non-normalizable when N + Lx vanishes on a column.
AnalyticDensity density_from_domain(const NatExtDomain& domain, int N, std::string name = "natext");

struct NatExtModel {
  NatExtMap map;
  NatExtDomain domain;
  std::map<std::string, double> heights;
};

/// Known domains: four_exp_12, four_exp_15, four_exp_24, two_exp_sqrt2 and
/// plateau (needs alpha in ((sqrt33-5)/2, sqrt2-1)).
NatExtModel natext_model(std::string_view name, std::optional<double> alpha = std::nullopt);

}  // namespace cfdyn
