#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfdyn/natext.hpp"

namespace cfdyn {

/// Witness of T^K(alpha+1) ~ T^M(alpha) for T = T_{alpha,N}.
struct MatchingRecord {
  int N = 2;
  double alpha = 0.0;
  int K = 0;
  int M = 0;
  double residual = 0.0;
  bool matched = false;
};

/// residual = |T^K(alpha+1) - T^M(alpha)|, matched when residual < tol.
MatchingRecord check_matching(int N, double alpha, int K, int M, double tol = 1e-9);

struct MatchingScanOptions {
  std::size_t n_samples = 10'000;
  int max_exp = 10;
  double tol = 1e-9;
  /// Residuals in [tol, ambiguity_factor * tol) are counted as ambiguous, not seen.
  double ambiguity_factor = 1e3;
  /// Samples whose orbits pass within this distance of a branch cut are skipped.
  double boundary_margin = 1e-12;
  std::uint64_t seed = 20'240'901;
};

/// Seen/not-seen table indexed [M][K] for exponents 1..max_exp (index 0 unused).
struct MatchingScan {
  int N = 2;
  MatchingScanOptions options;
  std::vector<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> ambiguous;
  /// Smallest matching pair (by K+M, then M) for each sample that matched.
  std::vector<MatchingRecord> minimal;
  std::size_t sampled = 0;
  std::size_t skipped = 0;

  bool observed(int M, int K) const { return seen.at(M).at(K) > 0; }
  /// Same question with the roles of alpha and alpha+1 exchanged.
  bool observed_transposed(int M, int K) const { return seen.at(K).at(M) > 0; }
  std::size_t ambiguous_count(int M, int K) const { return ambiguous.at(M).at(K); }
};

/// Samples alpha uniformly from (0, sqrt(N)-1) and records which exponent
/// pairs match.
MatchingScan scan_matching(int N, const MatchingScanOptions& options = {});

/// The parameter regions on which T^3(alpha) = T^3(alpha+1) holds with a fixed
/// digit pattern, numbered 1..3 left to right.
struct PlateauRegion {
  int index;
  double lo;
  double hi;
};
std::array<PlateauRegion, 3> plateau_regions();

struct ThreeStepCheck {
  double alpha = 0.0;
  int region = 0;
  /// Absolute errors of T(alpha), T^2(alpha), T(alpha+1), T^2(alpha+1) and of
  /// both third iterates against their closed forms.
  double err_t1 = 0.0, err_t2 = 0.0, err_s1 = 0.0, err_s2 = 0.0, err_t3 = 0.0, err_s3 = 0.0;
  /// T(alpha) has digit 1 and T(alpha+1) has digit 4.
  bool digits_ok = false;
  double matching_residual = 0.0;

  double worst() const;
};

struct ThreeStepReport {
  std::vector<ThreeStepCheck> checks;
  double worst = 0.0;
  std::vector<std::string> failures;
  bool pass = false;
};

/// Samples per_region alphas strictly inside each region and checks the closed
/// forms of the first three iterates of alpha and alpha+1 to tol.
ThreeStepReport verify_three_step_matching(std::size_t per_region = 100, double tol = 1e-10, std::uint64_t seed = 7);
ThreeStepCheck three_step_check(double alpha);

struct QuiltingReport {
  double alpha = 0.0;
  double beta = 0.0;
  /// |2/(3+F) - 2/(4+B)| and |2/(3+E) - 2/(4+A)|.
  double y_identity_low = 0.0;
  double y_identity_high = 0.0;
  /// Largest endpoint difference between the fourth D and A rectangles.
  double region_mismatch = 0.0;
  /// Largest symmetric-difference area between a pushed region and the next one.
  /// Nonzero when alpha and beta are far enough apart that a region straddles a
  /// branch cut, so the listed rectangles are not literally the images.
  double chain_mismatch = 0.0;
  std::array<Rectangle, 4> D;
  std::array<Rectangle, 4> A;
  /// y identities and D4 = A4 within tolerance.
  bool pass = false;
  /// chain_mismatch within region tolerance.
  bool chain_exact = false;
};

/// Builds the exchanged regions D1..D4 (from alpha) and A1..A4 (from beta)
/// out of the six plateau heights and checks D4 = A4; also measures how far each
/// region is from the image of the previous one. Heights default to the solved
/// system.
QuiltingReport quilting_verify(double alpha, double beta,
                               std::optional<std::map<std::string, double>> heights = std::nullopt,
                               double y_tol = 1e-14, double region_tol = 1e-12);

}  // namespace cfdyn
