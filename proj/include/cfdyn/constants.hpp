#pragma once

#include <cmath>

// Closed-form constants of the N=2 greedy family near alpha = sqrt2 - 1.

namespace cfdyn::constants {

inline double sqrt2() { return std::sqrt(2.0); }
inline double sqrt33() { return std::sqrt(33.0); }

/// Left end of the entropy plateau, (sqrt33-5)/2; below it T_{alpha,2} has 5+ branches.
inline double plateau_lower() { return (sqrt33() - 5.0) / 2.0; }
/// Right end of the entropy plateau, sqrt2 - 1.
inline double plateau_upper() { return sqrt2() - 1.0; }
/// Interior cut points splitting the plateau into three matching regimes.
inline double plateau_cut1() { return (std::sqrt(51.0) - 6.0) / 3.0; }
inline double plateau_cut2() { return (std::sqrt(129.0) - 9.0) / 6.0; }

/// Fiber heights of the natural extension of T_{sqrt2-1,2}.
struct Sqrt2Heights {
  double A, B, C;
};
inline Sqrt2Heights sqrt2_heights() { return {(sqrt33() - 5.0) / 2.0, (sqrt33() - 3.0) / 6.0, (sqrt33() - 3.0) / 2.0}; }

/// Fiber heights shared by every natural extension on the plateau.
struct PlateauHeights {
  double A, B, C, D, E, F;
};
inline PlateauHeights plateau_heights() {
  return {(sqrt33() - 5.0) / 2.0, sqrt2() - 1.0,         (sqrt33() - 3.0) / 6.0,
          2.0 * sqrt2() - 2.0,    (sqrt33() - 3.0) / 2.0, sqrt2()};
}

/// H^{-1} = log((3+2 sqrt2)(7+sqrt33)(sqrt33-5)^2 / 32), about 0.2522.
inline double plateau_inverse_normalizer() {
  double s = sqrt33();
  return std::log((3.0 + 2.0 * sqrt2()) * (7.0 + s) * (s - 5.0) * (s - 5.0) / 32.0);
}

}  // namespace cfdyn::constants
