#include "cfdyn/maps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cfdyn {

Interval Branch::image(int N) const { return image(N, domain); }

Interval Branch::image(int N, const Interval& sub) const {
  double u = apply(N, sub.lo());
  double v = apply(N, sub.hi());
  return {std::min(u, v), std::max(u, v)};
}

namespace {

std::string describe(const Branch& b) {
  std::ostringstream os;
  os.precision(17);
  os << "branch [" << b.domain.lo() << ", " << b.domain.hi() << "] (eps=" << b.epsilon
     << ", d=" << b.digit << ")";
  return os.str();
}

}  // namespace

CFMap::CFMap(int N, Interval domain, std::vector<Branch> branches)
    : N_(N), domain_(domain), branches_(std::move(branches)) {
  if (N_ < 2) throw MapError("CFMap: N must be >= 2");
  if (domain_.lo() <= 0.0) throw MapError("CFMap: domain must satisfy a > 0");
  if (domain_.hi() > N_ + kSlack) throw MapError("CFMap: domain must lie in [0, N]");
  if (domain_.length() <= 0.0) throw MapError("CFMap: empty domain");
  if (branches_.empty()) throw MapError("CFMap: no branches");

  std::sort(branches_.begin(), branches_.end(),
            [](const Branch& x, const Branch& y) { return x.domain.lo() < y.domain.lo(); });

  const double a = domain_.lo();
  const double b = domain_.hi();
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const Branch& br = branches_[i];
    if (br.epsilon != 1 && br.epsilon != -1) throw MapError("CFMap: epsilon must be +-1 in " + describe(br));
    if (br.digit < 1) throw MapError("CFMap: digit must be positive in " + describe(br));
    double expected_lo = i == 0 ? a : branches_[i - 1].domain.hi();
    double gap = br.domain.lo() - expected_lo;
    if (gap > kSlack) throw MapError("CFMap: coverage gap before " + describe(br));
    if (gap < -kSlack) throw MapError("CFMap: overlapping interiors at " + describe(br));
  }
  if (std::abs(branches_.back().domain.hi() - b) > kSlack) {
    throw MapError("CFMap: branches do not reach the right end of the domain");
  }

  // Snap shared endpoints so the branches tile [a,b] exactly.
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    double lo = i == 0 ? a : branches_[i - 1].domain.hi();
    double hi = i + 1 == branches_.size() ? b : branches_[i].domain.hi();
    branches_[i].domain = Interval(lo, hi);
  }

  for (const auto& br : branches_) {
    Interval img = br.image(N_);
    // N/x - d cancels about log10(N/x) digits.
    const double slack = kSlack * std::max(1.0, N_ / br.domain.lo());
    if (img.lo() < a - slack || img.hi() > b + slack) {
      std::ostringstream os;
      os.precision(17);
      os << "CFMap: " << describe(br) << " maps to [" << img.lo() << ", " << img.hi()
         << "], outside [" << a << ", " << b << "]";
      throw MapError(os.str());
    }
  }

  upper_.reserve(branches_.size());
  for (const auto& br : branches_) upper_.push_back(br.domain.hi());
}

std::size_t CFMap::locate(double x) const {
  if (!(x >= domain_.lo() - kSlack && x <= domain_.hi() + kSlack)) {
    std::ostringstream os;
    os.precision(17);
    os << "CFMap: x=" << x << " outside domain [" << domain_.lo() << ", " << domain_.hi() << "]";
    throw std::domain_error(os.str());
  }
  auto it = std::lower_bound(upper_.begin(), upper_.end(), x);
  if (it == upper_.end()) return upper_.size() - 1;
  return static_cast<std::size_t>(it - upper_.begin());
}

Step CFMap::apply(double x) const {
  std::size_t i = locate(x);
  x = std::clamp(x, domain_.lo(), domain_.hi());
  const Branch& br = branches_[i];
  Step s{br.apply(N_, x), br.digit, br.epsilon, i, false};
  if (s.value < domain_.lo() || s.value > domain_.hi()) {
    s.value = std::clamp(s.value, domain_.lo(), domain_.hi());
    s.clamped = true;
  }
  return s;
}

double CFMap::iterate(double x, std::size_t n) const {
  for (std::size_t k = 0; k < n; ++k) x = apply(x).value;
  return x;
}

double CFMap::log_derivative(double x) const { return std::log(static_cast<double>(N_)) - 2.0 * std::log(x); }

IntervalSet CFMap::preimage(const IntervalSet& s) const {
  std::vector<Interval> parts;
  for (const auto& br : branches_) {
    IntervalSet hit = intersect(s, br.image(N_));
    for (const auto& p : hit.parts()) {
      double u = br.inverse(N_, p.lo());
      double v = br.inverse(N_, p.hi());
      double lo = std::max(std::min(u, v), br.domain.lo());
      double hi = std::min(std::max(u, v), br.domain.hi());
      if (lo <= hi) parts.emplace_back(lo, hi);
    }
  }
  return IntervalSet(std::move(parts));
}

IntervalSet CFMap::preimage(const IntervalSet& s, int n) const {
  IntervalSet out = s;
  for (int k = 0; k < n; ++k) out = preimage(out);
  return out;
}

IntervalSet CFMap::image(const IntervalSet& s) const {
  std::vector<Interval> parts;
  for (const auto& br : branches_) {
    IntervalSet hit = intersect(s, br.domain);
    for (const auto& p : hit.parts()) {
      Interval img = br.image(N_, p);
      parts.emplace_back(std::max(img.lo(), domain_.lo()), std::min(img.hi(), domain_.hi()));
    }
  }
  return IntervalSet(std::move(parts));
}

bool CFMap::is_full(std::size_t branch) const {
  Interval img = branches_.at(branch).image(N_);
  return img.lo() <= domain_.lo() + kSlack && img.hi() >= domain_.hi() - kSlack;
}

CFMap build_map(int N, Interval domain, std::vector<Branch> branches) {
  return CFMap(N, domain, std::move(branches));
}

namespace {

// floor() that forgives a few ulps below an integer, so that values like
// N/(alpha+1) - alpha at alpha = sqrt(N)-1 land on 1 rather than 0.
int tolerant_floor(double v) { return static_cast<int>(std::floor(v + 1e-12 * std::max(1.0, std::abs(v)))); }

void require_alpha(int N, double alpha) {
  if (N < 2) throw std::domain_error("greedy map: N must be >= 2");
  double top = std::sqrt(static_cast<double>(N)) - 1.0;
  if (!(alpha > 0.0) || alpha > top + 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "greedy map: alpha=" << alpha << " outside (0, sqrt(N)-1] = (0, " << top << "]";
    throw std::domain_error(os.str());
  }
}

}  // namespace

DigitRange digit_alphabet(int N, double alpha) {
  require_alpha(N, alpha);
  return {tolerant_floor(N / (alpha + 1.0) - alpha), tolerant_floor(N / alpha - alpha)};
}

CFMap greedy_alpha(int N, double alpha) {
  require_alpha(N, alpha);
  const double a = alpha;
  const double b = alpha + 1.0;
  std::vector<Branch> branches;
  // Digit d owns (N/(alpha+d+1), N/(alpha+d)]; larger digits sit further left.
  for (int d = 1;; ++d) {
    double hi = std::min(N / (alpha + d), b);
    double lo = std::max(N / (alpha + d + 1), a);
    if (hi <= a) break;
    if (hi - lo > 1e-15) branches.push_back({Interval(lo, hi), 1, d});
  }
  return CFMap(N, Interval(a, b), std::move(branches));
}

namespace {

CFMap make_four_exp(int eps_left, int d_left, int eps_right, int d_right) {
  const double cut = 4.0 / 3.0;
  return CFMap(4, Interval(1.0, 2.0),
               {{Interval(1.0, cut), eps_left, d_left}, {Interval(cut, 2.0), eps_right, d_right}});
}

CFMap make_bar_t() {
  const double c1 = 4.0 / 7.0, c2 = 2.0 / 3.0, c3 = 4.0 / 5.0;
  return CFMap(2, Interval(0.5, 1.0),
               {{Interval(0.5, c1), 1, 3},
                {Interval(c1, c2), -1, 4},
                {Interval(c2, c3), 1, 2},
                {Interval(c3, 1.0), -1, 3}});
}

CFMap make_two_exp_sqrt2() {
  const double r2 = std::sqrt(2.0);
  const double a = r2 - 1.0;
  const double c4 = (6.0 - 2.0 * r2) / 7.0;
  const double c3 = 2.0 - r2;
  const double c2 = 2.0 * (r2 - 1.0);
  return CFMap(2, Interval(a, r2),
               {{Interval(a, c4), 1, 4},
                {Interval(c4, c3), 1, 3},
                {Interval(c3, c2), 1, 2},
                {Interval(c2, r2), 1, 1}});
}

const std::map<std::string, std::string, std::less<>>& aliases() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"four_exp_12", "four_exp_12"},         {"four_expansion_12", "four_exp_12"},
      {"four_exp_15", "four_exp_15"},         {"four_expansion_15", "four_exp_15"},
      {"four_exp_24", "four_exp_24"},         {"four_expansion_24", "four_exp_24"},
      {"bar_T", "bar_T"},                     {"two_exp_sqrt2", "two_exp_sqrt2"},
      {"two_expansion_sqrt2", "two_exp_sqrt2"},
  };
  return table;
}

}  // namespace

CFMap named_map(std::string_view name) {
  auto it = aliases().find(name);
  if (it == aliases().end()) throw std::invalid_argument("unknown map name '" + std::string(name) + "'");
  const std::string& canon = it->second;
  if (canon == "four_exp_12") return make_four_exp(1, 2, 1, 1);
  if (canon == "four_exp_15") return make_four_exp(-1, 5, 1, 1);
  if (canon == "four_exp_24") return make_four_exp(1, 2, -1, 4);
  if (canon == "bar_T") return make_bar_t();
  return make_two_exp_sqrt2();
}

std::vector<std::string> named_map_names() {
  return {"four_exp_12", "four_exp_15", "four_exp_24", "bar_T", "two_exp_sqrt2"};
}

}  // namespace cfdyn
