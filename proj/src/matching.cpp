#include "cfdyn/matching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cfdyn/constants.hpp"
#include "cfdyn/parallel.hpp"
#include "cfdyn/rng.hpp"

namespace cfdyn {

MatchingRecord check_matching(int N, double alpha, int K, int M, double tol) {
  if (K < 0 || M < 0) throw std::invalid_argument("check_matching: exponents must be >= 0");
  CFMap T = greedy_alpha(N, alpha);
  double top = T.iterate(alpha + 1.0, static_cast<std::size_t>(K));
  double bottom = T.iterate(alpha, static_cast<std::size_t>(M));
  MatchingRecord r{N, alpha, K, M, std::abs(top - bottom), false};
  r.matched = r.residual < tol;
  return r;
}

// ---------------------------------------------------------------------------
// Scan

namespace {

enum : std::uint8_t { kNone = 0, kSeen = 1, kAmbiguous = 2 };

struct SampleResult {
  bool skipped = false;
  std::vector<std::uint8_t> state;  // (max_exp+1)^2, row M, column K
  std::optional<MatchingRecord> minimal;
};

bool near_cut(const CFMap& T, double x, double margin) {
  auto br = T.branches();
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (std::abs(x - br[i].domain.hi()) < margin) return true;
  }
  return false;
}

SampleResult scan_one(int N, double alpha, const MatchingScanOptions& opt) {
  const int n = opt.max_exp;
  SampleResult out;
  CFMap T = greedy_alpha(N, alpha);
  std::vector<double> top(static_cast<std::size_t>(n) + 1), bottom(static_cast<std::size_t>(n) + 1);
  top[0] = alpha + 1.0;
  bottom[0] = alpha;
  for (int k = 1; k <= n; ++k) {
    for (auto* orbit : {&top, &bottom}) {
      double prev = (*orbit)[static_cast<std::size_t>(k) - 1];
      if (near_cut(T, prev, opt.boundary_margin)) {
        out.skipped = true;
        return out;
      }
      (*orbit)[static_cast<std::size_t>(k)] = T(prev);
    }
  }
  const std::size_t w = static_cast<std::size_t>(n) + 1;
  out.state.assign(w * w, kNone);
  for (int M = 1; M <= n; ++M) {
    for (int K = 1; K <= n; ++K) {
      double r = std::abs(top[static_cast<std::size_t>(K)] - bottom[static_cast<std::size_t>(M)]);
      std::uint8_t s = r < opt.tol ? kSeen : (r < opt.ambiguity_factor * opt.tol ? kAmbiguous : kNone);
      out.state[static_cast<std::size_t>(M) * w + static_cast<std::size_t>(K)] = s;
      if (s == kSeen) {
        bool better = !out.minimal || K + M < out.minimal->K + out.minimal->M ||
                      (K + M == out.minimal->K + out.minimal->M && M < out.minimal->M);
        if (better) out.minimal = MatchingRecord{N, alpha, K, M, r, true};
      }
    }
  }
  return out;
}

}  // namespace

MatchingScan scan_matching(int N, const MatchingScanOptions& opt) {
  if (opt.max_exp < 1) throw std::invalid_argument("scan_matching: max_exp must be >= 1");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("scan_matching: tol must be positive");
  const double top = std::sqrt(static_cast<double>(N)) - 1.0;
  Rng rng(opt.seed);
  std::vector<double> alphas(opt.n_samples);
  for (double& a : alphas) {
    do {
      a = rng.uniform(0.0, top);
    } while (!(a > 0.0));
  }

  std::vector<SampleResult> results(opt.n_samples);
  parallel_for(opt.n_samples, [&](std::size_t i) { results[i] = scan_one(N, alphas[i], opt); });

  const std::size_t w = static_cast<std::size_t>(opt.max_exp) + 1;
  MatchingScan scan;
  scan.N = N;
  scan.options = opt;
  scan.seen.assign(w, std::vector<std::size_t>(w, 0));
  scan.ambiguous.assign(w, std::vector<std::size_t>(w, 0));
  for (const auto& r : results) {
    if (r.skipped) {
      ++scan.skipped;
      continue;
    }
    ++scan.sampled;
    for (std::size_t M = 1; M < w; ++M) {
      for (std::size_t K = 1; K < w; ++K) {
        std::uint8_t s = r.state[M * w + K];
        if (s == kSeen) ++scan.seen[M][K];
        if (s == kAmbiguous) ++scan.ambiguous[M][K];
      }
    }
    if (r.minimal) scan.minimal.push_back(*r.minimal);
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Three-step matching on the plateau

std::array<PlateauRegion, 3> plateau_regions() {
  return {{{1, constants::plateau_lower(), constants::plateau_cut1()},
           {2, constants::plateau_cut1(), constants::plateau_cut2()},
           {3, constants::plateau_cut2(), constants::plateau_upper()}}};
}

double ThreeStepCheck::worst() const { return std::max({err_t1, err_t2, err_s1, err_s2, err_t3, err_s3}); }

ThreeStepCheck three_step_check(double alpha) {
  int region = 0;
  for (const auto& r : plateau_regions()) {
    bool inside = alpha > r.lo && (r.index == 3 ? alpha < r.hi : alpha <= r.hi);
    if (inside) region = r.index;
  }
  if (region == 0) {
    std::ostringstream os;
    os.precision(17);
    os << "three_step_check: alpha=" << alpha << " outside the plateau";
    throw std::domain_error(os.str());
  }
  const double a = alpha;
  const CFMap T = greedy_alpha(2, a);
  ThreeStepCheck c;
  c.alpha = a;
  c.region = region;
  const Step t1 = T.apply(a);
  const Step t2 = T.apply(t1.value);
  const Step t3 = T.apply(t2.value);
  const Step s1 = T.apply(a + 1.0);
  const Step s2 = T.apply(s1.value);
  const Step s3 = T.apply(s2.value);
  c.digits_ok = t2.digit == 1 && s2.digit == 4;
  c.err_t1 = std::abs(t1.value - (2.0 - 4.0 * a) / a);
  c.err_t2 = std::abs(t2.value - (3.0 * a - 1.0) / (1.0 - 2.0 * a));
  c.err_s1 = std::abs(s1.value - (1.0 - a) / (a + 1.0));
  c.err_s2 = std::abs(s2.value - (6.0 * a - 2.0) / (1.0 - a));
  const double numer[] = {5.0 - 13.0 * a, 4.0 - 10.0 * a, 3.0 - 7.0 * a};
  const double closed = numer[region - 1] / (3.0 * a - 1.0);
  c.err_t3 = std::abs(t3.value - closed);
  c.err_s3 = std::abs(s3.value - closed);
  c.matching_residual = std::abs(t3.value - s3.value);
  return c;
}

ThreeStepReport verify_three_step_matching(std::size_t per_region, double tol, std::uint64_t seed) {
  ThreeStepReport rep;
  for (const auto& r : plateau_regions()) {
    Rng rng(seed, static_cast<std::uint64_t>(r.index));
    for (std::size_t i = 0; i < per_region; ++i) {
      double a;
      do {
        a = rng.uniform(r.lo, r.hi);
      } while (!(a > r.lo && a < r.hi));
      ThreeStepCheck c = three_step_check(a);
      rep.worst = std::max({rep.worst, c.worst(), c.matching_residual});
      if (c.worst() >= tol || c.matching_residual >= tol || !c.digits_ok) {
        std::ostringstream os;
        os.precision(17);
        os << "region " << r.index << " alpha=" << a << ": worst closed-form error " << c.worst()
           << ", matching residual " << c.matching_residual << (c.digits_ok ? "" : ", wrong digits");
        rep.failures.push_back(os.str());
      }
      rep.checks.push_back(c);
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Quilting

namespace {

Interval hull_of(double u, double v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

QuiltingReport quilting_verify(double alpha, double beta, std::optional<std::map<std::string, double>> heights,
                               double y_tol, double region_tol) {
  const double lower = constants::plateau_lower();
  const double upper = constants::plateau_upper();
  if (!(lower < alpha && alpha < beta && beta < upper)) {
    std::ostringstream os;
    os.precision(17);
    os << "quilting_verify: need " << lower << " < alpha < beta < " << upper << ", got alpha=" << alpha
       << " beta=" << beta;
    throw std::domain_error(os.str());
  }
  const std::map<std::string, double> h = heights ? *heights : solve_heights(named_height_system("plateau")).values;
  const double A = h.at("A"), B = h.at("B"), C = h.at("C"), D = h.at("D"), E = h.at("E"), F = h.at("F");
  const NatExtMap Ta(greedy_alpha(2, alpha));
  const NatExtMap Tb(greedy_alpha(2, beta));
  const CFMap& ta = Ta.base();
  const CFMap& tb = Tb.base();

  QuiltingReport rep;
  rep.alpha = alpha;
  rep.beta = beta;

  // x-sides: images of the endpoints, each region under its own map.
  double da = alpha, db = beta, aa = alpha + 1.0, ab = beta + 1.0;
  std::array<Interval, 4> dx, ax;
  for (int i = 0; i < 4; ++i) {
    dx[i] = hull_of(da, db);
    ax[i] = hull_of(aa, ab);
    da = ta(da);
    db = ta(db);
    aa = tb(aa);
    ab = tb(ab);
  }
  // Digit used on the third step; the same on both ends inside one region.
  const int d = ta.apply(ta.iterate(alpha, 2)).digit;
  const int e = tb.apply(tb.iterate(alpha + 1.0, 2)).digit;

  rep.D = {{{dx[0], Interval(A, D)},
            {dx[1], Interval(B, C)},
            {dx[2], Interval(E, F)},
            {dx[3], hull_of(2.0 / (d + F), 2.0 / (d + E))}}};
  rep.A = {{{ax[0], Interval(C, F)},
            {ax[1], Interval(D, E)},
            {ax[2], Interval(A, B)},
            {ax[3], hull_of(2.0 / (e + B), 2.0 / (e + A))}}};

  rep.y_identity_low = std::abs(2.0 / (3.0 + F) - 2.0 / (4.0 + B));
  rep.y_identity_high = std::abs(2.0 / (3.0 + E) - 2.0 / (4.0 + A));

  const Rectangle& d4 = rep.D[3];
  const Rectangle& a4 = rep.A[3];
  rep.region_mismatch = std::max({std::abs(d4.x.lo() - a4.x.lo()), std::abs(d4.x.hi() - a4.x.hi()),
                                  std::abs(d4.y.lo() - a4.y.lo()), std::abs(d4.y.hi() - a4.y.hi())});

  for (int i = 0; i < 3; ++i) {
    std::vector<Rectangle> pd = push_forward(Ta, std::span<const Rectangle>(&rep.D[i], 1));
    std::vector<Rectangle> pa = push_forward(Tb, std::span<const Rectangle>(&rep.A[i], 1));
    rep.chain_mismatch = std::max({rep.chain_mismatch, symmetric_difference_area(pd, {&rep.D[i + 1], 1}),
                                   symmetric_difference_area(pa, {&rep.A[i + 1], 1})});
  }

  rep.pass = rep.y_identity_low < y_tol && rep.y_identity_high < y_tol && rep.region_mismatch < region_tol;
  rep.chain_exact = rep.chain_mismatch < region_tol;
  return rep;
}

}  // namespace cfdyn
