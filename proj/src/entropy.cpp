#include "cfdyn/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cfdyn/parallel.hpp"
#include "cfdyn/quadrature.hpp"
#include "cfdyn/rng.hpp"

namespace cfdyn {

double rohlin_entropy(const CFMap& map, const AnalyticDensity& f) {
  if (!f.normalizable()) throw std::invalid_argument("rohlin_entropy: density '" + f.name() + "' is not normalizable");
  const Interval& d = map.domain();
  double mass = f.integrate(d.lo(), d.hi());
  if (std::abs(mass - 1.0) > 1e-6) {
    throw std::invalid_argument("rohlin_entropy: density integrates to " + std::to_string(mass) + ", not 1");
  }
  const double logN = std::log(static_cast<double>(map.modulus()));
  return integrate([&](double x) { return (logN - 2.0 * std::log(x)) * f(x); }, d.lo(), d.hi(), f.breakpoints());
}

double rohlin_entropy(const CFMap& map, const DensityEstimate& f) {
  if (std::abs(f.mass() - 1.0) > 1e-6) {
    throw std::invalid_argument("rohlin_entropy: estimate integrates to " + std::to_string(f.mass()) + ", not 1");
  }
  const double logN = std::log(static_cast<double>(map.modulus()));
  auto x_log_x = [](double x) { return x * std::log(x) - x; };
  double h = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i) {
    double a = f.edge(i), b = f.edge(i + 1);
    h += f.values[i] * (logN * (b - a) - 2.0 * (x_log_x(b) - x_log_x(a)));
  }
  return h;
}

double birkhoff_average(const CFMap& map, double x, std::size_t n_iters, std::size_t burn_in) {
  if (n_iters == 0) throw std::invalid_argument("birkhoff_average: n_iters must be positive");
  x = map.iterate(x, burn_in);
  double sum = 0.0;
  for (std::size_t k = 0; k < n_iters; ++k) {
    sum += std::log(x);
    x = map(x);
  }
  return std::log(static_cast<double>(map.modulus())) - 2.0 * sum / static_cast<double>(n_iters);
}

BirkhoffEstimate birkhoff_entropy(const CFMap& map, std::size_t n_orbits, std::size_t n_iters, std::uint64_t seed,
                                  std::size_t burn_in) {
  if (n_orbits == 0 || n_iters == 0) throw std::invalid_argument("birkhoff_entropy: counts must be positive");
  std::vector<double> per_orbit(n_orbits);
  const Interval& d = map.domain();
  parallel_for(n_orbits, [&](std::size_t i) {
    Rng rng(seed, i);
    per_orbit[i] = birkhoff_average(map, rng.uniform(d.lo(), d.hi()), n_iters, burn_in);
  });
  double mean = 0.0;
  for (double v : per_orbit) mean += v;
  mean /= static_cast<double>(n_orbits);
  BirkhoffEstimate out{mean, 0.0};
  if (n_orbits > 1) {
    double ss = 0.0;
    for (double v : per_orbit) ss += (v - mean) * (v - mean);
    out.std_error = std::sqrt(ss / static_cast<double>(n_orbits - 1) / static_cast<double>(n_orbits));
  }
  return out;
}

std::string_view to_string(EntropyMethod m) { return m == EntropyMethod::birkhoff ? "birkhoff" : "rohlin-gkl"; }

EntropyMethod parse_entropy_method(std::string_view s) {
  if (s == "birkhoff") return EntropyMethod::birkhoff;
  if (s == "rohlin-gkl" || s == "rohlin_gkl") return EntropyMethod::rohlin_gkl;
  throw std::invalid_argument("unknown entropy method '" + std::string(s) + "' (birkhoff, rohlin-gkl)");
}

EntropyCurve entropy_sweep(int N, std::span<const double> alphas, EntropyMethod method, const EntropyBudget& budget) {
  EntropyCurve curve{N, std::vector<EntropySample>(alphas.size())};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    EntropySample& s = curve.samples[i];
    s.alpha = alphas[i];
    s.method = method;
    try {
      CFMap T = greedy_alpha(N, alphas[i]);
      if (method == EntropyMethod::birkhoff) {
        BirkhoffEstimate b = birkhoff_entropy(T, budget.n_orbits, budget.n_iters, budget.seed, budget.burn_in);
        s.h = b.h;
        s.std_error = b.std_error;
      } else {
        s.h = rohlin_entropy(T, gkl_density(T, budget.gkl_iters, budget.grid_cells));
      }
    } catch (const std::exception& e) {
      s.h = std::numeric_limits<double>::quiet_NaN();
      s.error = e.what();
    }
  }
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("linear_grid: need at least one point");
  if (steps == 1) return {lo};
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    g[i] = i + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return g;
}

}  // namespace cfdyn
