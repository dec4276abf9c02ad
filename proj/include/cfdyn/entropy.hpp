#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfdyn/density.hpp"
#include "cfdyn/maps.hpp"

namespace cfdyn {

/// h = integral of (log N - 2 log x) f(x) dx. Throws std::invalid_argument if
/// f is not normalizable or does not integrate to 1 within 1e-6.
double rohlin_entropy(const CFMap& map, const AnalyticDensity& f);
/// Same for a grid estimate; the log is integrated exactly on every cell.
double rohlin_entropy(const CFMap& map, const DensityEstimate& f);

struct BirkhoffEstimate {
  double h = 0.0;
  /// Standard error of the mean over orbits (0 for a single orbit).
  double std_error = 0.0;
};

/// Mean of log N - 2 log(T^k x) over n_orbits uniformly seeded orbits of
/// n_iters steps each, after burn_in discarded steps. Orbit i draws its seed
/// from Rng(seed, i).
BirkhoffEstimate birkhoff_entropy(const CFMap& map, std::size_t n_orbits, std::size_t n_iters, std::uint64_t seed = 1,
                                  std::size_t burn_in = 1000);
/// Single orbit from a given start point.
double birkhoff_average(const CFMap& map, double x0, std::size_t n_iters, std::size_t burn_in = 0);

enum class EntropyMethod { birkhoff, rohlin_gkl };

std::string_view to_string(EntropyMethod m);
EntropyMethod parse_entropy_method(std::string_view s);

struct EntropyBudget {
  std::size_t n_orbits = 100;
  std::size_t n_iters = 10'000;
  std::size_t burn_in = 1000;
  int gkl_iters = 8;
  std::size_t grid_cells = 1000;
  std::uint64_t seed = 1;
};

struct EntropySample {
  double alpha = 0.0;
  double h = 0.0;
  double std_error = 0.0;
  EntropyMethod method = EntropyMethod::birkhoff;
  /// Empty on success; otherwise the failure message and h is NaN.
  std::string error;
};

struct EntropyCurve {
  int N = 2;
  std::vector<EntropySample> samples;
};

/// Entropy of T_{alpha,N} for every alpha; failures are recorded per sample.
EntropyCurve entropy_sweep(int N, std::span<const double> alphas, EntropyMethod method = EntropyMethod::birkhoff,
                           const EntropyBudget& budget = {});

/// steps evenly spaced points from lo to hi inclusive (one point: lo).
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

}  // namespace cfdyn
