#include "cfdyn/expansion.hpp"

#include <cmath>
#include <sstream>

namespace cfdyn {

std::vector<int> DigitSequence::digits() const {
  std::vector<int> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.digit);
  return out;
}

std::string DigitSequence::shorthand() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) os << ", " << entries[i - 1].epsilon << '/';
    os << entries[i].digit;
  }
  os << "]_" << N;
  return os.str();
}

DigitSequence expand(const CFMap& map, double x, std::size_t n) {
  if (n == 0) throw std::invalid_argument("expand: n must be >= 1");
  DigitSequence seq;
  seq.N = map.modulus();
  seq.entries.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Step s = map.apply(x);
    seq.entries.push_back({s.digit, s.epsilon});
    if (s.clamped) ++seq.clamped;
    x = s.value;
  }
  seq.remainder = x;
  return seq;
}

double evaluate(int N, std::span<const DigitEntry> entries, double tail) {
  double r = tail;
  for (std::size_t k = entries.size(); k-- > 0;) {
    double den = entries[k].digit + entries[k].epsilon * r;
    if (den == 0.0) {
      throw EvaluationError("evaluate: zero denominator at digit " + std::to_string(k + 1), k + 1);
    }
    r = N / den;
  }
  return r;
}

std::vector<double> convergence_profile(const CFMap& map, double x, std::size_t n) {
  DigitSequence seq = expand(map, x, n);
  std::vector<double> out;
  out.reserve(n);
  std::span<const DigitEntry> all(seq.entries);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(std::abs(x - evaluate(seq.N, all.first(k))));
  return out;
}

}  // namespace cfdyn
