#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfdyn/expansion.hpp"
#include "cfdyn/interval.hpp"
#include "cfdyn/maps.hpp"

namespace cfdyn {

struct AttractorResult {
  int N = 2;
  double alpha = 0.0;
  IntervalSet support;
  /// Complement of the support in [alpha, alpha+1], gaps below min_hole dropped.
  IntervalSet holes;
  /// Iterations used by the slowest seed.
  std::size_t steps = 0;
  bool converged = false;
};

struct AttractorOptions {
  std::size_t max_steps = 200;
  /// Number of orbit points used as seeds; the supports found are intersected.
  std::size_t n_seeds = 8;
  /// Half-width of the seed interval around each orbit point.
  double seed_radius = 1e-6;
  std::size_t burn_in = 1000;
  /// Growth of the hull below this measure counts as stable.
  double tol = 1e-12;
  /// Gaps shorter than this are rounding debris, not holes.
  double min_hole = 1e-12;
  std::uint64_t seed = 1;
};

/// Grows S <- S u T(S) from small intervals around typical orbit points until
/// the growth stalls; the stable set is forward invariant and carries the
/// invariant measure. Throws std::runtime_error if some seed has not
/// stabilized after max_steps, naming the last two measures.
AttractorResult find_attractor(int N, double alpha, const AttractorOptions& options = {});

struct ThresholdRow {
  int N = 0;
  double alpha = 0.0;
  /// N/(sqrt N - 1) - 2 <= sqrt N and sqrt N - 1 <= N/(sqrt N - 1) - 2.
  bool two_branches = false;
  /// Gap between [alpha, N/alpha - 2] and [N alpha/(N - 2 alpha) - 1, alpha + 1].
  bool gap = false;
  /// Third image lands back inside [alpha, N/alpha - 2], in the printed and in
  /// the corrected form (sign of (1 - 3 alpha) flipped, sqrt(N) - 1 in the bound).
  bool returns_printed = false;
  bool returns_corrected = false;
  bool strict_printed() const { return gap && returns_printed; }
  bool strict_corrected() const { return gap && returns_corrected; }
};

/// Evaluates the two-branch and strict-attractor inequalities at alpha = sqrt(N)-1.
std::vector<ThresholdRow> attractor_threshold_check(int n_lo, int n_hi);

struct ImageChain {
  /// Endpoint errors of the three images against their closed forms.
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
  double worst() const { return std::max({first, second, third}); }
};

/// Compares T[alpha, N/(alpha+2)], T[alpha, N/alpha - 2] and
/// T[N alpha/(N-2alpha) - 1, alpha + 1] with their closed forms at alpha = sqrt(N)-1.
ImageChain three_step_image_chain(int N);

struct AttractorSweepRow {
  double alpha = 0.0;
  IntervalSet support;
  std::string error;
};

std::vector<AttractorSweepRow> attractor_sweep(int N, std::span<const double> alphas,
                                               const AttractorOptions& options = {});

/// Points whose first digits are word, built from nested inverse branches.
/// Empty when the word is not admissible.
IntervalSet cylinder_interval(int N, double alpha, std::span<const int> word);
/// True when the nonempty cylinder lies inside a single hole.
bool cylinder_in_holes(int N, double alpha, std::span<const int> word, const IntervalSet& holes);

/// First n digits of x under T_{alpha,N}.
DigitSequence endpoint_expansions(int N, double alpha, double x, std::size_t n);

}  // namespace cfdyn
