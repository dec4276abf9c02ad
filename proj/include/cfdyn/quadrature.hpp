#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cfdyn {

namespace detail {

inline std::vector<double> panel_edges(double lo, double hi, std::span<const double> breakpoints) {
  std::vector<double> cuts{lo};
  for (double c : breakpoints) {
    if (c > lo && c < hi) cuts.push_back(c);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod over [lo, hi], split at the given breakpoints so
/// that every panel sees a smooth integrand.
template <class F>
double integrate(F&& f, double lo, double hi, std::span<const double> breakpoints = {}) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts = detail::panel_edges(lo, hi, breakpoints);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) {
      total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], 12, 1e-14);
    }
  }
  return total;
}

/// Non-adaptive 20-point Gauss-Legendre per panel, for short smooth pieces.
template <class F>
double integrate_fixed(F&& f, double lo, double hi, std::span<const double> breakpoints = {}) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts = detail::panel_edges(lo, hi, breakpoints);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) total += boost::math::quadrature::gauss<double, 20>::integrate(f, cuts[i], cuts[i + 1]);
  }
  return total;
}

}  // namespace cfdyn
