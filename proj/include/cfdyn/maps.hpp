#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfdyn/interval.hpp"

namespace cfdyn {

/// Raised when a branch table violates the CFMap invariants.
class MapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One branch x -> eps*N/x - eps*digit on a sub-interval of the map domain.
struct Branch {
  Interval domain;
  int epsilon = 1;
  int digit = 1;

  double apply(int N, double x) const { return epsilon * (N / x - digit); }
  /// Inverse branch y -> N / (digit + eps*y).
  double inverse(int N, double y) const { return N / (digit + epsilon * y); }
  /// Image of the branch domain (a closed interval; monotone branch).
  Interval image(int N) const;
  /// Image of a sub-interval of the branch domain.
  Interval image(int N, const Interval& sub) const;
};

/// Result of one application of a CFMap.
struct Step {
  double value = 0.0;
  int digit = 0;
  int epsilon = 0;
  std::size_t branch = 0;
  /// True when rounding pushed the value outside [a,b] and it was clamped back.
  bool clamped = false;
};

/// Piecewise map T(x) = eps(x) N / x - eps(x) d(x) on [a,b] with finitely many
/// branches. Branches are sorted left to right; each owns (lo, hi] except the
/// leftmost which owns [lo, hi].
class CFMap {
 public:
  static constexpr double kSlack = 1e-12;

  /// Validates and builds the map; throws MapError on any violated invariant.
  CFMap(int N, Interval domain, std::vector<Branch> branches);

  int modulus() const { return N_; }
  const Interval& domain() const { return domain_; }
  std::span<const Branch> branches() const { return branches_; }

  /// Index of the branch owning x. Throws std::domain_error outside [a,b].
  std::size_t locate(double x) const;
  Step apply(double x) const;
  /// Shorthand for apply(x).value.
  double operator()(double x) const { return apply(x).value; }
  /// Forward orbit value T^n(x).
  double iterate(double x, std::size_t n) const;
  /// log|T'(x)| = log N - 2 log x, the same on every branch.
  double log_derivative(double x) const;

  /// T^{-1}(s) intersected with the domain.
  IntervalSet preimage(const IntervalSet& s) const;
  IntervalSet preimage(const IntervalSet& s, int n) const;
  /// T(s), computed branchwise from monotone images.
  IntervalSet image(const IntervalSet& s) const;

  /// True if the branch maps onto the whole domain.
  bool is_full(std::size_t branch) const;

 private:
  int N_;
  Interval domain_;
  std::vector<Branch> branches_;
  std::vector<double> upper_;  // branch upper ends, for locate()
};

/// Same as the CFMap constructor.
CFMap build_map(int N, Interval domain, std::vector<Branch> branches);

/// Smallest and largest digit of T_{alpha,N}.
struct DigitRange {
  int n_min = 0;
  int n_max = 0;
};

/// n_min = floor(N/(alpha+1) - alpha), n_max = floor(N/alpha - alpha).
DigitRange digit_alphabet(int N, double alpha);

/// The greedy map T_{alpha,N}(x) = N/x - floor(N/x - alpha) on [alpha, alpha+1],
/// alpha in (0, sqrt(N)-1]. Throws std::domain_error outside that range.
CFMap greedy_alpha(int N, double alpha);

/// Maps with names: four_exp_12 (digits 1,2 on [1,2]), four_exp_15 (flipped
/// left branch), four_exp_24 (flipped right branch), bar_T (mixed-sign N=2 map
/// on [1/2,1]) and two_exp_sqrt2 (T_{sqrt2-1,2}). Long aliases
/// four_expansion_12/15/24 and two_expansion_sqrt2 are accepted.
CFMap named_map(std::string_view name);
std::vector<std::string> named_map_names();

}  // namespace cfdyn
