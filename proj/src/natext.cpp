#include "cfdyn/natext.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cfdyn/constants.hpp"

namespace cfdyn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// eps N / (d + y), with N/(d +- inf) = 0.
double fiber_step(int N, int eps, int d, double y) {
  if (std::isinf(y)) return 0.0;
  return eps * N / (d + y);
}

}  // namespace

Point NatExtMap::apply(Point p) const {
  Step s = base_.apply(p.x);
  return {s.value, fiber_step(base_.modulus(), s.epsilon, s.digit, p.y)};
}

std::vector<Point> simulate_domain(const NatExtMap& nat, Point seed, std::size_t n_burn, std::size_t n_keep) {
  Point p = seed;
  for (std::size_t k = 0; k < n_burn; ++k) p = nat.apply(p);
  std::vector<Point> out;
  out.reserve(n_keep);
  for (std::size_t k = 0; k < n_keep; ++k) {
    p = nat.apply(p);
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Height systems

double HeightSolution::at(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) throw std::out_of_range("HeightSolution: no height named '" + name + "'");
  return it->second;
}

namespace {

constexpr double kPinned = 1e12;

double evaluate(const HeightSystem& sys, const HeightEquation& eq, const std::map<std::string, double>& v) {
  double y = fiber_step(sys.N, eq.sign, eq.digit, v.at(eq.source));
  if (std::abs(y) > kPinned) return std::copysign(kInf, y);
  return y;
}

double distance(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
  return std::abs(a - b);
}

}  // namespace

HeightSolution solve_heights(const HeightSystem& sys, std::size_t max_iter, double tol) {
  if (sys.equations.empty()) throw std::invalid_argument("solve_heights: empty system");
  std::map<std::string, double> v;
  for (const auto& eq : sys.equations) {
    if (!v.emplace(eq.target, 1.0).second) {
      throw std::invalid_argument("solve_heights: height '" + eq.target + "' defined twice");
    }
  }
  for (const auto& eq : sys.equations) {
    if (!v.count(eq.source)) throw std::invalid_argument("solve_heights: unknown height '" + eq.source + "'");
  }

  HeightSolution sol;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    std::map<std::string, double> next;
    double step = 0.0;
    for (const auto& eq : sys.equations) {
      double y = evaluate(sys, eq, v);
      step = std::max(step, distance(y, v.at(eq.target)));
      next[eq.target] = y;
    }
    v = std::move(next);
    if (step < tol) {
      sol.values = v;
      sol.iterations = it;
      for (const auto& eq : sys.equations) {
        sol.residual = std::max(sol.residual, distance(v.at(eq.target), evaluate(sys, eq, v)));
      }
      return sol;
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << "solve_heights: no convergence in " << max_iter << " iterations;";
  for (const auto& [name, value] : v) os << ' ' << name << '=' << value;
  throw std::runtime_error(os.str());
}

HeightSystem named_height_system(std::string_view name) {
  if (name == "four_exp_12") return {4, {{"A", 1, 2, "B"}, {"B", 1, 1, "A"}}};
  if (name == "four_exp_15") return {4, {{"A", -1, 5, "A"}, {"B", 1, 1, "A"}}};
  if (name == "four_exp_24") return {4, {{"A", -1, 4, "A"}, {"B", 1, 2, "A"}}};
  if (name == "two_exp_sqrt2") return {2, {{"A", 1, 4, "C"}, {"B", 1, 3, "C"}, {"C", 1, 1, "B"}}};
  if (name == "plateau" || name == "theorem2") {
    return {2,
            {{"A", 1, 4, "E"},
             {"B", 1, 4, "D"},
             {"C", 1, 3, "E"},
             {"D", 1, 2, "B"},
             {"E", 1, 1, "C"},
             {"F", 1, 1, "B"}}};
  }
  throw std::invalid_argument("named_height_system: unknown system '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Domains

NatExtDomain::NatExtDomain(Interval base, std::vector<Column> columns) : base_(base), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("NatExtDomain: no columns");
  std::sort(columns_.begin(), columns_.end(), [](const Column& a, const Column& b) { return a.x.lo() < b.x.lo(); });
  double cursor = base_.lo();
  for (const auto& c : columns_) {
    if (std::abs(c.x.lo() - cursor) > CFMap::kSlack) {
      throw std::invalid_argument("NatExtDomain: columns must tile the base interval");
    }
    if (!(c.lower <= c.upper)) throw std::invalid_argument("NatExtDomain: column with lower > upper");
    cursor = c.x.hi();
  }
  if (std::abs(cursor - base_.hi()) > CFMap::kSlack) {
    throw std::invalid_argument("NatExtDomain: columns must tile the base interval");
  }
}

NatExtDomain NatExtDomain::from_steps(Interval base, const StepFunction& lower, const StepFunction& upper) {
  for (const StepFunction* s : {&lower, &upper}) {
    if (s->values.size() != s->cuts.size() + 1) throw std::invalid_argument("StepFunction: need one more value than cuts");
    if (!std::is_sorted(s->cuts.begin(), s->cuts.end())) throw std::invalid_argument("StepFunction: cuts not sorted");
  }
  std::vector<double> edges{base.lo()};
  for (const StepFunction* s : {&lower, &upper}) {
    for (double c : s->cuts) {
      if (c > base.lo() && c < base.hi()) edges.push_back(c);
    }
  }
  edges.push_back(base.hi());
  std::sort(edges.begin(), edges.end());
  auto value_at = [](const StepFunction& s, double x) {
    auto it = std::upper_bound(s.cuts.begin(), s.cuts.end(), x);
    return s.values[static_cast<std::size_t>(it - s.cuts.begin())];
  };
  std::vector<Column> cols;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    double mid = 0.5 * (edges[i] + edges[i + 1]);
    cols.push_back({Interval(edges[i], edges[i + 1]), value_at(lower, mid), value_at(upper, mid)});
  }
  return NatExtDomain(base, std::move(cols));
}

bool NatExtDomain::bounded() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const Column& c) { return std::isfinite(c.lower) && std::isfinite(c.upper); });
}

double NatExtDomain::area() const {
  double a = 0.0;
  for (const auto& c : columns_) a += c.x.length() * (c.upper - c.lower);
  return a;
}

NatExtDomain NatExtDomain::perturbed(double height, double delta) const {
  std::vector<Column> cols = columns_;
  for (auto& c : cols) {
    if (c.lower == height) c.lower += delta;
    if (c.upper == height) c.upper += delta;
  }
  return NatExtDomain(base_, std::move(cols));
}

// ---------------------------------------------------------------------------
// Bijectivity

std::vector<Rectangle> push_forward(const NatExtMap& nat, std::span<const Rectangle> rects) {
  const CFMap& T = nat.base();
  const int N = T.modulus();
  std::vector<Rectangle> out;
  for (const auto& r : rects) {
    for (const auto& br : T.branches()) {
      double lo = std::max(r.x.lo(), br.domain.lo());
      double hi = std::min(r.x.hi(), br.domain.hi());
      if (!(hi - lo > IntervalSet::kDegenerate)) continue;
      double u = fiber_step(N, br.epsilon, br.digit, r.y.lo());
      double v = fiber_step(N, br.epsilon, br.digit, r.y.hi());
      out.push_back({br.image(N, Interval(lo, hi)), Interval(std::min(u, v), std::max(u, v))});
    }
  }
  return out;
}

namespace {

std::vector<double> x_edges(std::span<const Rectangle> a, std::span<const Rectangle> b) {
  std::vector<double> edges;
  for (auto set : {a, b}) {
    for (const auto& r : set) {
      edges.push_back(r.x.lo());
      edges.push_back(r.x.hi());
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// y-extent over the slab [u, v] of the rectangles spanning it; sum gets the
// total stacked length.
IntervalSet slab_cover(std::span<const Rectangle> rects, double u, double v, double* sum = nullptr) {
  std::vector<Interval> ys;
  for (const auto& r : rects) {
    if (r.x.lo() <= u && r.x.hi() >= v) {
      ys.push_back(r.y);
      if (sum) *sum += r.y.length();
    }
  }
  return IntervalSet(std::move(ys));
}

}  // namespace

double symmetric_difference_area(std::span<const Rectangle> a, std::span<const Rectangle> b) {
  std::vector<double> edges = x_edges(a, b);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    area += (edges[i + 1] - edges[i]) *
            symmetric_difference_measure(slab_cover(a, edges[i], edges[i + 1]), slab_cover(b, edges[i], edges[i + 1]));
  }
  return area;
}

BijectivityReport verify_bijectivity(const NatExtMap& nat, const NatExtDomain& domain) {
  BijectivityReport report;
  if (!domain.bounded()) {
    report.skipped = true;
    return report;
  }
  std::vector<Rectangle> cols;
  for (const auto& c : domain.columns()) cols.push_back({c.x, Interval(c.lower, c.upper)});
  const std::vector<Rectangle> images = push_forward(nat, cols);
  const std::vector<double> edges = x_edges(images, cols);

  const auto& columns = domain.columns();
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double w = edges[i + 1] - edges[i];
    const double mid = 0.5 * (edges[i] + edges[i + 1]);
    double stacked = 0.0;
    IntervalSet cover = slab_cover(images, edges[i], edges[i + 1], &stacked);
    double inside = 0.0;
    double fiber = 0.0;
    if (domain.base().contains(mid)) {
      auto it = std::upper_bound(columns.begin(), columns.end(), mid,
                                 [](double x, const Column& c) { return x < c.x.hi(); });
      const Column& c = it == columns.end() ? columns.back() : *it;
      fiber = c.upper - c.lower;
      inside = intersect(cover, Interval(c.lower, c.upper)).measure();
    }
    report.overlap += (stacked - cover.measure()) * w;
    report.gap += (fiber - inside) * w;
    report.excess += (cover.measure() - inside) * w;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Projected density

namespace {

// c / (N + c x), tending to 1/x as |c| -> inf.
double marginal_term(int N, double c, double x) {
  if (std::isinf(c)) return 1.0 / x;
  return c / (N + c * x);
}

// Integral of marginal_term over [u, v].
double marginal_integral(int N, double c, double u, double v) {
  if (std::isinf(c)) return std::log(v / u);
  return std::log((N + c * v) / (N + c * u));
}

bool singular(int N, double c, const Interval& x) {
  if (std::isinf(c)) return false;
  return N + c * x.lo() <= 1e-12 || N + c * x.hi() <= 1e-12;
}

}  // namespace

AnalyticDensity density_from_domain(const NatExtDomain& domain, int N, std::string name) {
  const std::vector<Column> cols = domain.columns();
  bool normalizable = true;
  double total = 0.0;
  std::vector<double> cuts;
  for (const auto& c : cols) {
    if (singular(N, c.lower, c.x) || singular(N, c.upper, c.x)) {
      normalizable = false;
      continue;
    }
    total += marginal_integral(N, c.upper, c.x.lo(), c.x.hi()) - marginal_integral(N, c.lower, c.x.lo(), c.x.hi());
  }
  for (std::size_t i = 1; i < cols.size(); ++i) cuts.push_back(cols[i].x.lo());
  auto raw = [N, cols](double x) {
    auto it = std::upper_bound(cols.begin(), cols.end(), x, [](double v, const Column& c) { return v < c.x.hi(); });
    const Column& c = it == cols.end() ? cols.back() : *it;
    return marginal_term(N, c.upper, x) - marginal_term(N, c.lower, x);
  };
  return AnalyticDensity(std::move(name), domain.base(), raw, std::move(cuts), total, normalizable);
}

// ---------------------------------------------------------------------------
// Known models

NatExtModel natext_model(std::string_view name, std::optional<double> alpha) {
  const Interval unit(1.0, 2.0);
  if (name == "four_exp_12" || name == "four_expansion_12") {
    HeightSolution h = solve_heights(named_height_system("four_exp_12"));
    return {NatExtMap(named_map("four_exp_12")),
            NatExtDomain(unit, {{unit, h.at("A"), h.at("B")}}), h.values};
  }
  if (name == "four_exp_15" || name == "four_expansion_15") {
    HeightSolution h = solve_heights(named_height_system("four_exp_15"));
    return {NatExtMap(named_map("four_exp_15")),
            NatExtDomain(unit, {{unit, h.at("A"), h.at("B")}}), h.values};
  }
  if (name == "four_exp_24" || name == "four_expansion_24") {
    // Parabolic fixed point A = -2: iteration converges too slowly, use the root.
    std::map<std::string, double> h{{"A", -2.0}, {"B", kInf}};
    return {NatExtMap(named_map("four_exp_24")), NatExtDomain(unit, {{unit, -2.0, kInf}}), h};
  }
  if (name == "two_exp_sqrt2" || name == "two_expansion_sqrt2") {
    HeightSolution h = solve_heights(named_height_system("two_exp_sqrt2"));
    const double a = constants::sqrt2() - 1.0;
    Interval base(a, constants::sqrt2());
    NatExtDomain dom = NatExtDomain::from_steps(base, {{2.0 * a}, {h.at("A"), h.at("B")}}, {{}, {h.at("C")}});
    return {NatExtMap(named_map("two_exp_sqrt2")), dom, h.values};
  }
  if (name == "plateau" || name == "theorem2") {
    if (!alpha) throw std::invalid_argument("natext_model: '" + std::string(name) + "' needs alpha");
    const double al = *alpha;
    if (!(al > constants::plateau_lower() && al < constants::plateau_upper())) {
      std::ostringstream os;
      os.precision(17);
      os << "natext_model: alpha=" << al << " outside the plateau (" << constants::plateau_lower() << ", "
         << constants::plateau_upper() << ")";
      throw std::domain_error(os.str());
    }
    HeightSolution h = solve_heights(named_height_system("plateau"));
    CFMap T = greedy_alpha(2, al);
    const double t_top = T(al + 1.0);
    const double t2_top = T(t_top);
    const double t_bottom = T(al);
    const double t2_bottom = T(t_bottom);
    StepFunction lower{{t2_top, t_bottom}, {h.at("A"), h.at("B"), h.at("C")}};
    StepFunction upper{{t_top, t2_bottom}, {h.at("D"), h.at("E"), h.at("F")}};
    NatExtDomain dom = NatExtDomain::from_steps(T.domain(), lower, upper);
    return {NatExtMap(std::move(T)), dom, h.values};
  }
  throw std::invalid_argument("natext_model: unknown model '" + std::string(name) + "'");
}

}  // namespace cfdyn
