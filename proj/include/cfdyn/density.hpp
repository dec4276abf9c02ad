#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfdyn/interval.hpp"
#include "cfdyn/maps.hpp"

namespace cfdyn {

/// Piecewise-constant density on a uniform grid over a map domain.
struct DensityEstimate {
  Interval domain;
  std::vector<double> values;

  static DensityEstimate uniform(const Interval& domain, std::size_t cells);

  std::size_t cells() const { return values.size(); }
  double cell_width() const { return domain.length() / static_cast<double>(values.size()); }
  /// Left edge of cell i; edge(cells()) is the right end of the domain.
  double edge(std::size_t i) const;
  double x_mid(std::size_t i) const { return edge(i) + 0.5 * cell_width(); }
  std::size_t cell_of(double x) const;
  double operator()(double x) const { return values[cell_of(x)]; }
  /// Integral over the whole domain.
  double mass() const;
  /// Integral over [lo, hi] (clipped to the domain), exact for the step function.
  double integrate(double lo, double hi) const;
  /// Divide by mass() so the estimate integrates to 1.
  void normalize();
};

/// Closed-form density c * raw(x) on a domain, c the normalizing constant.
/// Non-normalizable ("sigma-finite infinite") densities keep c = 1.
class AnalyticDensity {
 public:
  AnalyticDensity(std::string name, Interval domain, std::function<double(double)> raw,
                  std::vector<double> breakpoints, double raw_integral, bool normalizable = true,
                  std::function<double(double)> primitive = {});

  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }
  std::span<const double> breakpoints() const { return breakpoints_; }
  bool normalizable() const { return normalizable_; }
  /// Integral of raw over the domain (H^{-1}, 1/C, ...); infinite if not normalizable.
  double raw_integral() const { return raw_integral_; }
  /// Normalizing constant c = 1/raw_integral (1 if not normalizable).
  double constant() const { return constant_; }

  double raw(double x) const { return raw_(x); }
  double operator()(double x) const { return constant_ * raw_(x); }
  /// Integral of the (normalized) density over [lo, hi] clipped to the domain;
  /// exact when an antiderivative of raw was supplied, quadrature otherwise.
  double integrate(double lo, double hi) const;

 private:
  std::string name_;
  Interval domain_;
  std::function<double(double)> raw_;
  std::vector<double> breakpoints_;
  std::function<double(double)> primitive_;
  double raw_integral_;
  bool normalizable_;
  double constant_;
};

struct GklDiagnostics {
  /// Total preimage measure before normalization; equals b-a up to rounding.
  double raw_mass = 0.0;
  /// Number of nonempty depth-n cylinders visited.
  std::size_t cylinders = 0;
};

/// Gauss-Kuzmin-Lévy estimate: cell i gets lambda(T^{-n}[z_i, z_{i+1}]) / dz,
/// computed exactly from the depth-n cylinders and their inverse Möbius maps.
/// Throws std::runtime_error when more than max_cylinders would be visited.
DensityEstimate gkl_density(const CFMap& map, int n_iter = 10, std::size_t grid_cells = 1000,
                            GklDiagnostics* diagnostics = nullptr, std::size_t max_cylinders = 10'000'000);

struct HistogramOptions {
  std::size_t n_points = 2500;
  std::size_t n_iters = 20;
  std::size_t n_repeats = 400;
  /// Extra passes that draw initial points from the previous estimate.
  std::size_t resample_rounds = 1;
  std::size_t grid_cells = 1000;
  std::uint64_t seed = 1;
};

/// Orbit-occupation histogram: n_points seeds iterated n_iters times (the
/// seeds themselves counted), averaged over n_repeats; then resample_rounds
/// more passes seeded from the previous estimate. Returns the last pass.
DensityEstimate histogram_density(const CFMap& map, const HistogramOptions& options = {});

/// Closed-form densities: four_exp_12, four_exp_15, four_exp_24_infinite
/// (not normalizable), two_exp_sqrt2, and plateau (alias theorem2), the
/// six-term family for alpha in ((sqrt33-5)/2, sqrt2-1) with breakpoints
/// taken from the orbits of alpha and alpha+1.
AnalyticDensity analytic_density(std::string_view name, std::optional<double> alpha = std::nullopt);
std::vector<std::string> analytic_density_names();

double l2_distance(const DensityEstimate& f, const DensityEstimate& g);
double l2_distance(const DensityEstimate& f, const AnalyticDensity& g);
inline double l2_distance(const AnalyticDensity& f, const DensityEstimate& g) { return l2_distance(g, f); }
double l2_distance(const AnalyticDensity& f, const AnalyticDensity& g);

/// max over A of |mu(T^{-1}A) - mu(A)|, mu(A) the integral of the density over A.
template <class Density>
double check_invariance(const CFMap& map, const Density& density, std::span<const Interval> test_intervals) {
  double worst = 0.0;
  for (const auto& a : test_intervals) {
    double before = density.integrate(a.lo(), a.hi());
    double after = 0.0;
    const IntervalSet pre = map.preimage(IntervalSet(a));
    for (const auto& p : pre.parts()) after += density.integrate(p.lo(), p.hi());
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

/// n random sub-intervals of the domain with uniformly drawn endpoints.
std::vector<Interval> random_intervals(const Interval& domain, std::size_t n, std::uint64_t seed);

}  // namespace cfdyn
