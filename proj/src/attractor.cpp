#include "cfdyn/attractor.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cfdyn/parallel.hpp"
#include "cfdyn/rng.hpp"

namespace cfdyn {

namespace {

struct Grown {
  IntervalSet set;
  std::size_t steps = 0;
};

Grown grow(const CFMap& T, IntervalSet s, const AttractorOptions& opt) {
  double before = s.measure();
  double after = before;
  for (std::size_t step = 1; step <= opt.max_steps; ++step) {
    IntervalSet next = unite(s, T.image(s));
    before = after;
    after = next.measure();
    if (after - before < opt.tol) return {std::move(next), step};
    s = std::move(next);
  }
  std::ostringstream os;
  os.precision(17);
  os << "find_attractor: no stabilization after " << opt.max_steps << " steps; last measures " << before << " and "
     << after;
  throw std::runtime_error(os.str());
}

}  // namespace

AttractorResult find_attractor(int N, double alpha, const AttractorOptions& opt) {
  if (opt.n_seeds == 0) throw std::invalid_argument("find_attractor: need at least one seed");
  const CFMap T = greedy_alpha(N, alpha);
  const Interval dom = T.domain();

  std::vector<Grown> grown(opt.n_seeds);
  parallel_for(opt.n_seeds, [&](std::size_t i) {
    Rng rng(opt.seed, i);
    double x = T.iterate(rng.uniform(dom.lo(), dom.hi()), opt.burn_in);
    Interval start(std::max(dom.lo(), x - opt.seed_radius), std::min(dom.hi(), x + opt.seed_radius));
    grown[i] = grow(T, IntervalSet(start), opt);
  });

  AttractorResult res;
  res.N = N;
  res.alpha = alpha;
  res.support = grown[0].set;
  for (const auto& g : grown) {
    res.support = intersect(res.support, g.set);
    res.steps = std::max(res.steps, g.steps);
  }
  std::vector<Interval> holes;
  const IntervalSet gaps = complement(res.support, dom);
  for (const auto& h : gaps.parts()) {
    if (h.length() >= opt.min_hole) holes.push_back(h);
  }
  res.holes = IntervalSet(std::move(holes));
  res.converged = true;
  return res;
}

std::vector<ThresholdRow> attractor_threshold_check(int n_lo, int n_hi) {
  if (n_lo < 2 || n_hi < n_lo) throw std::invalid_argument("attractor_threshold_check: need 2 <= lo <= hi");
  constexpr double eps = 1e-12;
  std::vector<ThresholdRow> rows;
  for (int N = n_lo; N <= n_hi; ++N) {
    const double n = N;
    const double r = std::sqrt(n);
    ThresholdRow row;
    row.N = N;
    row.alpha = r - 1.0;
    const double top_of_left = n / (r - 1.0) - 2.0;
    row.two_branches = top_of_left <= r + eps && r - 1.0 <= top_of_left + eps;
    row.gap = top_of_left < n * (r - 1.0) / (n - 2.0 * (r - 1.0)) - 1.0;
    const double denom = (r - 2.0) * n + 2.0 * (r - 1.0);
    const double printed = (n * n - (4.0 - 3.0 * r) * n - 2.0 * (r - 1.0)) / denom;
    const double corrected = (n * n + (4.0 - 3.0 * r) * n - 2.0 * (r - 1.0)) / denom;
    row.returns_printed = printed < n / std::sqrt(n - 1.0) - 2.0;
    row.returns_corrected = corrected < top_of_left;
    rows.push_back(row);
  }
  return rows;
}

ImageChain three_step_image_chain(int N) {
  const double n = N;
  const double a = std::sqrt(n) - 1.0;
  const CFMap T = greedy_alpha(N, a);
  auto endpoint_error = [](const IntervalSet& got, std::initializer_list<Interval> want) {
    if (got.size() != want.size()) return std::numeric_limits<double>::infinity();
    double e = 0.0;
    std::size_t i = 0;
    for (const auto& w : want) {
      e = std::max({e, std::abs(got.parts()[i].lo() - w.lo()), std::abs(got.parts()[i].hi() - w.hi())});
      ++i;
    }
    return e;
  };
  const double left_top = n / a - 2.0;
  const double right_bottom = n * a / (n - 2.0 * a) - 1.0;
  const double third_top = (n * n - (3.0 * a - 1.0) * n - 2.0 * a) / ((a - 1.0) * n + 2.0 * a);
  ImageChain c;
  c.first = endpoint_error(T.image(IntervalSet(Interval(a, n / (a + 2.0)))), {Interval(a, left_top)});
  c.second = endpoint_error(T.image(IntervalSet(Interval(a, left_top))),
                            {Interval(a, left_top), Interval(right_bottom, a + 1.0)});
  c.third = endpoint_error(T.image(IntervalSet(Interval(right_bottom, a + 1.0))), {Interval(a, third_top)});
  return c;
}

std::vector<AttractorSweepRow> attractor_sweep(int N, std::span<const double> alphas, const AttractorOptions& opt) {
  std::vector<AttractorSweepRow> rows(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    rows[i].alpha = alphas[i];
    try {
      rows[i].support = find_attractor(N, alphas[i], opt).support;
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  }
  return rows;
}

IntervalSet cylinder_interval(int N, double alpha, std::span<const int> word) {
  const CFMap T = greedy_alpha(N, alpha);
  IntervalSet s(T.domain());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    std::vector<Interval> parts;
    for (const auto& br : T.branches()) {
      if (br.digit != *it) continue;
      const IntervalSet hit = intersect(s, br.image(N));
      for (const auto& p : hit.parts()) {
        double u = br.inverse(N, p.lo());
        double v = br.inverse(N, p.hi());
        double lo = std::max(std::min(u, v), br.domain.lo());
        double hi = std::min(std::max(u, v), br.domain.hi());
        if (lo <= hi) parts.emplace_back(lo, hi);
      }
    }
    s = IntervalSet(std::move(parts));
    if (s.empty()) break;
  }
  return s;
}

bool cylinder_in_holes(int N, double alpha, std::span<const int> word, const IntervalSet& holes) {
  const IntervalSet c = cylinder_interval(N, alpha, word);
  if (c.empty()) return false;
  const Interval h = c.hull();
  for (const auto& hole : holes.parts()) {
    if (hole.lo() <= h.lo() && h.hi() <= hole.hi()) return true;
  }
  return false;
}

DigitSequence endpoint_expansions(int N, double alpha, double x, std::size_t n) {
  return expand(greedy_alpha(N, alpha), x, n);
}

}  // namespace cfdyn
