#include "cfdyn/density.hpp"

#include <array>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "cfdyn/constants.hpp"
#include "cfdyn/parallel.hpp"
#include "cfdyn/quadrature.hpp"
#include "cfdyn/rng.hpp"

namespace cfdyn {

// ---------------------------------------------------------------------------
// DensityEstimate

DensityEstimate DensityEstimate::uniform(const Interval& domain, std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("DensityEstimate: need at least one cell");
  return {domain, std::vector<double>(cells, 1.0 / domain.length())};
}

double DensityEstimate::edge(std::size_t i) const {
  if (i == values.size()) return domain.hi();
  return domain.lo() + domain.length() * static_cast<double>(i) / static_cast<double>(values.size());
}

std::size_t DensityEstimate::cell_of(double x) const {
  double t = (x - domain.lo()) / cell_width();
  if (!(t > 0.0)) return 0;
  auto i = static_cast<std::size_t>(t);
  return std::min(i, values.size() - 1);
}

double DensityEstimate::mass() const {
  double m = 0.0;
  for (double v : values) m += v;
  return m * cell_width();
}

double DensityEstimate::integrate(double lo, double hi) const {
  lo = std::max(lo, domain.lo());
  hi = std::min(hi, domain.hi());
  if (!(hi > lo)) return 0.0;
  std::size_t i0 = cell_of(lo);
  std::size_t i1 = cell_of(hi);
  double total = 0.0;
  for (std::size_t i = i0; i <= i1; ++i) {
    double a = std::max(lo, edge(i));
    double b = std::min(hi, edge(i + 1));
    if (b > a) total += values[i] * (b - a);
  }
  return total;
}

void DensityEstimate::normalize() {
  double m = mass();
  if (!(m > 0.0)) throw std::runtime_error("DensityEstimate: cannot normalize zero mass");
  for (double& v : values) v /= m;
}

// ---------------------------------------------------------------------------
// AnalyticDensity

AnalyticDensity::AnalyticDensity(std::string name, Interval domain, std::function<double(double)> raw,
                                 std::vector<double> breakpoints, double raw_integral, bool normalizable,
                                 std::function<double(double)> primitive)
    : name_(std::move(name)),
      domain_(domain),
      raw_(std::move(raw)),
      breakpoints_(std::move(breakpoints)),
      primitive_(std::move(primitive)),
      raw_integral_(normalizable ? raw_integral : std::numeric_limits<double>::infinity()),
      normalizable_(normalizable),
      constant_(normalizable ? 1.0 / raw_integral : 1.0) {
  std::sort(breakpoints_.begin(), breakpoints_.end());
}

double AnalyticDensity::integrate(double lo, double hi) const {
  lo = std::max(lo, domain_.lo());
  hi = std::min(hi, domain_.hi());
  if (!(hi > lo)) return 0.0;
  if (primitive_) return constant_ * (primitive_(hi) - primitive_(lo));
  return constant_ * cfdyn::integrate([this](double x) { return raw_(x); }, lo, hi, breakpoints_);
}

// ---------------------------------------------------------------------------
// Gauss-Kuzmin-Lévy

namespace {

// psi(y) = (p y + q) / (r y + s)
struct Mobius {
  double p = 1.0, q = 0.0, r = 0.0, s = 1.0;

  double operator()(double y) const { return (p * y + q) / (r * y + s); }
  double det() const { return p * s - q * r; }
  /// |psi(b) - psi(a)| without cancellation.
  double span(double a, double b) const { return std::abs(det() * (b - a) / ((r * a + s) * (r * b + s))); }

  /// this o inverse-branch, the inverse branch being y -> N / (d + eps y).
  Mobius then_inverse(int N, int eps, int d) const {
    Mobius m{q * eps, p * N + q * d, s * eps, r * N + s * d};
    double scale = std::max({std::abs(m.p), std::abs(m.q), std::abs(m.r), std::abs(m.s)});
    m.p /= scale;
    m.q /= scale;
    m.r /= scale;
    m.s /= scale;
    return m;
  }
};

struct Cylinder {
  Mobius inverse;   // T^k restricted to the cylinder, inverted
  double lo, hi;    // T^k(cylinder)
  int depth;
};

class GklAccumulator {
 public:
  GklAccumulator(const CFMap& map, std::size_t cells, int depth, std::size_t max_cylinders)
      : map_(map), edges_(cells + 1), depth_(depth), max_cylinders_(max_cylinders) {
    const Interval& d = map.domain();
    for (std::size_t i = 0; i <= cells; ++i) {
      edges_[i] = i == cells ? d.hi() : d.lo() + d.length() * static_cast<double>(i) / static_cast<double>(cells);
    }
  }

  /// Walks every depth-n cylinder below `root`, adding to `acc`; returns the
  /// number of leaves.
  std::size_t run(const Cylinder& root, std::vector<double>& acc) const {
    std::size_t leaves = 0;
    std::vector<Cylinder> stack{root};
    const int N = map_.modulus();
    while (!stack.empty()) {
      Cylinder c = stack.back();
      stack.pop_back();
      if (c.depth == depth_) {
        deposit(c, acc);
        if (++leaves > max_cylinders_) {
          throw std::runtime_error("gkl_density: more than " + std::to_string(max_cylinders_) +
                                   " preimage intervals; lower n_iter");
        }
        continue;
      }
      for (auto it = map_.branches().rbegin(); it != map_.branches().rend(); ++it) {
        const Branch& br = *it;
        double lo = std::max(c.lo, br.domain.lo());
        double hi = std::min(c.hi, br.domain.hi());
        if (!(hi - lo > IntervalSet::kDegenerate)) continue;
        Interval img = br.image(N, Interval(lo, hi));
        double ilo = std::max(img.lo(), map_.domain().lo());
        double ihi = std::min(img.hi(), map_.domain().hi());
        if (!(ihi > ilo)) continue;
        stack.push_back({c.inverse.then_inverse(N, br.epsilon, br.digit), ilo, ihi, c.depth + 1});
      }
    }
    return leaves;
  }

  std::vector<Cylinder> split(int levels) const {
    std::vector<Cylinder> roots{{Mobius{}, map_.domain().lo(), map_.domain().hi(), 0}};
    const int N = map_.modulus();
    for (int l = 0; l < levels && l < depth_; ++l) {
      std::vector<Cylinder> next;
      for (const auto& c : roots) {
        for (const auto& br : map_.branches()) {
          double lo = std::max(c.lo, br.domain.lo());
          double hi = std::min(c.hi, br.domain.hi());
          if (!(hi - lo > IntervalSet::kDegenerate)) continue;
          Interval img = br.image(N, Interval(lo, hi));
          double ilo = std::max(img.lo(), map_.domain().lo());
          double ihi = std::min(img.hi(), map_.domain().hi());
          if (!(ihi > ilo)) continue;
          next.push_back({c.inverse.then_inverse(N, br.epsilon, br.digit), ilo, ihi, c.depth + 1});
        }
      }
      roots = std::move(next);
    }
    return roots;
  }

 private:
  void deposit(const Cylinder& c, std::vector<double>& acc) const {
    auto first = std::upper_bound(edges_.begin(), edges_.end(), c.lo);
    std::size_t i = first == edges_.begin() ? 0 : static_cast<std::size_t>(first - edges_.begin()) - 1;
    const std::size_t cells = edges_.size() - 1;
    double left = c.lo;
    for (; i < cells && left < c.hi; ++i) {
      double right = std::min(edges_[i + 1], c.hi);
      if (right > left) acc[i] += c.inverse.span(left, right);
      left = right;
    }
  }

  const CFMap& map_;
  std::vector<double> edges_;
  int depth_;
  std::size_t max_cylinders_;
};

}  // namespace

DensityEstimate gkl_density(const CFMap& map, int n_iter, std::size_t grid_cells, GklDiagnostics* diagnostics,
                            std::size_t max_cylinders) {
  if (n_iter < 0) throw std::invalid_argument("gkl_density: n_iter must be >= 0");
  if (grid_cells < 1) throw std::invalid_argument("gkl_density: grid_cells must be >= 1");

  GklAccumulator walker(map, grid_cells, n_iter, max_cylinders);
  std::vector<Cylinder> roots = walker.split(n_iter >= 2 ? 2 : n_iter);
  std::vector<std::vector<double>> partial(roots.size());
  std::vector<std::size_t> leaves(roots.size(), 0);
  parallel_for(roots.size(), [&](std::size_t k) {
    partial[k].assign(grid_cells, 0.0);
    leaves[k] = walker.run(roots[k], partial[k]);
  });

  DensityEstimate est{map.domain(), std::vector<double>(grid_cells, 0.0)};
  std::size_t total_leaves = 0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    for (std::size_t i = 0; i < grid_cells; ++i) est.values[i] += partial[k][i];
    total_leaves += leaves[k];
  }
  if (total_leaves > max_cylinders) {
    throw std::runtime_error("gkl_density: more than " + std::to_string(max_cylinders) +
                             " preimage intervals; lower n_iter");
  }
  double raw_mass = 0.0;
  for (double v : est.values) raw_mass += v;
  const double w = est.cell_width();
  for (double& v : est.values) v /= w;
  if (diagnostics) {
    diagnostics->raw_mass = raw_mass;
    diagnostics->cylinders = total_leaves;
  }
  est.normalize();
  return est;
}

// ---------------------------------------------------------------------------
// Orbit histogram

namespace {

class InverseCdfSampler {
 public:
  explicit InverseCdfSampler(const DensityEstimate& f) : f_(f), cdf_(f.cells() + 1, 0.0) {
    for (std::size_t i = 0; i < f.cells(); ++i) cdf_[i + 1] = cdf_[i] + std::max(f.values[i], 0.0);
  }

  double operator()(double u) const {
    double target = u * cdf_.back();
    auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), target);
    std::size_t i = std::min(static_cast<std::size_t>(it - cdf_.begin()) - 1, f_.cells() - 1);
    double mass = cdf_[i + 1] - cdf_[i];
    double t = mass > 0.0 ? (target - cdf_[i]) / mass : 0.5;
    return f_.edge(i) + std::clamp(t, 0.0, 1.0) * f_.cell_width();
  }

 private:
  const DensityEstimate& f_;
  std::vector<double> cdf_;
};

}  // namespace

DensityEstimate histogram_density(const CFMap& map, const HistogramOptions& opt) {
  if (opt.n_points == 0 || opt.n_repeats == 0 || opt.grid_cells == 0) {
    throw std::invalid_argument("histogram_density: counts must be positive");
  }
  const Interval dom = map.domain();
  DensityEstimate current = DensityEstimate::uniform(dom, opt.grid_cells);
  Rng master(opt.seed);

  for (std::size_t round = 0; round <= opt.resample_rounds; ++round) {
    std::vector<std::uint64_t> counts(opt.grid_cells, 0);
    std::mutex merge;
    InverseCdfSampler sample(current);
    parallel_for(opt.n_repeats, [&](std::size_t rep) {
      Rng rng = master.split(round * 1'000'000'007ULL + rep);
      std::vector<std::uint64_t> local(opt.grid_cells, 0);
      for (std::size_t p = 0; p < opt.n_points; ++p) {
        double x = round == 0 ? rng.uniform(dom.lo(), dom.hi()) : sample(rng.uniform());
        ++local[current.cell_of(x)];
        for (std::size_t k = 0; k < opt.n_iters; ++k) {
          x = map.apply(x).value;
          ++local[current.cell_of(x)];
        }
      }
      std::lock_guard lock(merge);
      for (std::size_t i = 0; i < opt.grid_cells; ++i) counts[i] += local[i];
    });
    DensityEstimate next{dom, std::vector<double>(opt.grid_cells)};
    for (std::size_t i = 0; i < opt.grid_cells; ++i) next.values[i] = static_cast<double>(counts[i]);
    next.normalize();
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Closed-form densities

namespace {

// Integral of c / (k + c x) over [u, v].
double log_term(double k, double c, double u, double v) { return std::log((k + c * v) / (k + c * u)); }

AnalyticDensity four_exp_12_density() {
  // Projection of 4/(4+xy)^2 over the fiber [1,2].
  auto raw = [](double x) { return 1.0 / (2.0 + x) - 1.0 / (4.0 + x); };
  auto primitive = [](double x) { return std::log((2.0 + x) / (4.0 + x)); };
  double integral = std::log(4.0 / 3.0) - std::log(6.0 / 5.0);
  return {"four_exp_12", Interval(1.0, 2.0), raw, {}, integral, true, primitive};
}

AnalyticDensity four_exp_15_density() {
  auto raw = [](double x) { return 1.0 / x + 1.0 / (4.0 - x); };
  auto primitive = [](double x) { return std::log(x / (4.0 - x)); };
  return {"four_exp_15", Interval(1.0, 2.0), raw, {}, std::log(3.0), true, primitive};
}

AnalyticDensity four_exp_24_density() {
  auto raw = [](double x) { return 1.0 / x + 1.0 / (2.0 - x); };
  auto primitive = [](double x) { return std::log(x) - std::log(2.0 - x); };
  return {"four_exp_24_infinite", Interval(1.0, 2.0), raw, {}, 0.0, false, primitive};
}

AnalyticDensity two_exp_sqrt2_density() {
  const double s = constants::sqrt33();
  const double a = constants::sqrt2() - 1.0;
  const double cut = 2.0 * a;
  const double top = constants::sqrt2();
  const double hi = s - 3.0;
  const double lo = s - 5.0;
  auto raw = [=](double x) {
    if (x <= cut) return hi / (4.0 + hi * x) - lo / (4.0 + lo * x);
    return hi / (4.0 + hi * x) - hi / (12.0 + hi * x);
  };
  double integral = log_term(4.0, hi, a, top) - log_term(4.0, lo, a, cut) - log_term(12.0, hi, cut, top);
  return {"two_exp_sqrt2", Interval(a, top), raw, {cut}, integral};
}

AnalyticDensity plateau_density(double alpha) {
  const double lower = constants::plateau_lower();
  const double upper = constants::plateau_upper();
  if (!(alpha > lower && alpha < upper)) {
    std::ostringstream os;
    os.precision(17);
    os << "plateau density: alpha=" << alpha << " outside (" << lower << ", " << upper << ")";
    throw std::domain_error(os.str());
  }
  const auto h = constants::plateau_heights();
  const CFMap map = greedy_alpha(2, alpha);
  const double t_top = map(alpha + 1.0);   // T(alpha+1)
  const double t2_bottom = map(map(alpha)); // T^2(alpha)
  const double t2_top = map(t_top);         // T^2(alpha+1)
  const double t_bottom = map(alpha);       // T(alpha)
  const double right = alpha + 1.0;

  auto term = [](double c, double x) { return c / (2.0 + c * x); };
  auto in = [](double x, double u, double v) { return x > u && x < v; };
  auto raw = [=](double x) {
    double f = 0.0;
    if (in(x, alpha, t_top)) f += term(h.D, x);
    if (in(x, t_top, t2_bottom)) f += term(h.E, x);
    if (in(x, t2_bottom, right)) f += term(h.F, x);
    if (in(x, alpha, t2_top)) f -= term(h.A, x);
    if (in(x, t2_top, t_bottom)) f -= term(h.B, x);
    if (in(x, t_bottom, right)) f -= term(h.C, x);
    return f;
  };
  double integral = log_term(2.0, h.D, alpha, t_top) + log_term(2.0, h.E, t_top, t2_bottom) +
                    log_term(2.0, h.F, t2_bottom, right) - log_term(2.0, h.A, alpha, t2_top) -
                    log_term(2.0, h.B, t2_top, t_bottom) - log_term(2.0, h.C, t_bottom, right);
  return {"plateau", Interval(alpha, right), raw, {t_top, t2_bottom, t2_top, t_bottom}, integral};
}

}  // namespace

AnalyticDensity analytic_density(std::string_view name, std::optional<double> alpha) {
  if (name == "four_exp_12" || name == "four_expansion_12") return four_exp_12_density();
  if (name == "four_exp_15" || name == "four_expansion_15") return four_exp_15_density();
  if (name == "four_exp_24_infinite" || name == "four_exp_24") return four_exp_24_density();
  if (name == "two_exp_sqrt2" || name == "two_expansion_sqrt2") return two_exp_sqrt2_density();
  if (name == "plateau" || name == "theorem2") {
    if (!alpha) throw std::invalid_argument("analytic_density: '" + std::string(name) + "' needs alpha");
    return plateau_density(*alpha);
  }
  throw std::invalid_argument("analytic_density: unknown density '" + std::string(name) + "'");
}

std::vector<std::string> analytic_density_names() {
  return {"four_exp_12", "four_exp_15", "four_exp_24_infinite", "two_exp_sqrt2", "plateau"};
}

// ---------------------------------------------------------------------------
// L2 distances

double l2_distance(const DensityEstimate& f, const DensityEstimate& g) {
  if (f.cells() != g.cells() || std::abs(f.domain.lo() - g.domain.lo()) > 1e-12 ||
      std::abs(f.domain.hi() - g.domain.hi()) > 1e-12) {
    throw std::invalid_argument("l2_distance: estimates live on different grids");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i) {
    double d = f.values[i] - g.values[i];
    sum += d * d;
  }
  return std::sqrt(sum * f.cell_width());
}

double l2_distance(const DensityEstimate& f, const AnalyticDensity& g) {
  if (std::abs(f.domain.lo() - g.domain().lo()) > 1e-12 || std::abs(f.domain.hi() - g.domain().hi()) > 1e-12) {
    throw std::invalid_argument("l2_distance: densities live on different domains");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < f.cells(); ++i) {
    const double c = f.values[i];
    sum += integrate_fixed([&](double x) { double d = c - g(x); return d * d; }, f.edge(i), f.edge(i + 1),
                           g.breakpoints());
  }
  return std::sqrt(sum);
}

double l2_distance(const AnalyticDensity& f, const AnalyticDensity& g) {
  if (std::abs(f.domain().lo() - g.domain().lo()) > 1e-12 || std::abs(f.domain().hi() - g.domain().hi()) > 1e-12) {
    throw std::invalid_argument("l2_distance: densities live on different domains");
  }
  std::vector<double> cuts(f.breakpoints().begin(), f.breakpoints().end());
  cuts.insert(cuts.end(), g.breakpoints().begin(), g.breakpoints().end());
  double sum = integrate([&](double x) { double d = f(x) - g(x); return d * d; }, f.domain().lo(),
                         f.domain().hi(), cuts);
  return std::sqrt(sum);
}

std::vector<Interval> random_intervals(const Interval& domain, std::size_t n, std::uint64_t seed) {
  Rng rng(seed, 0x1a7e);
  std::vector<Interval> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.uniform(domain.lo(), domain.hi());
    double v = rng.uniform(domain.lo(), domain.hi());
    out.emplace_back(std::min(u, v), std::max(u, v));
  }
  return out;
}

}  // namespace cfdyn
