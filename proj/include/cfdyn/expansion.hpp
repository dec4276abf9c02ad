#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfdyn/maps.hpp"

namespace cfdyn {

struct DigitEntry {
  int digit = 1;
  int epsilon = 1;
  friend bool operator==(const DigitEntry&, const DigitEntry&) = default;
};

/// First n (digit, sign) pairs along the orbit of a seed.
struct DigitSequence {
  int N = 0;
  std::vector<DigitEntry> entries;
  /// T^n(x) for the generating seed; the exact tail for evaluate().
  double remainder = 0.0;
  /// Number of orbit steps that rounding pushed out of [a,b].
  std::size_t clamped = 0;

  std::vector<int> digits() const;
  /// [d1, e1/d2, e2/d3, ...]_N
  std::string shorthand() const;
};

/// Raised when backward evaluation hits a zero denominator.
class EvaluationError : public std::domain_error {
 public:
  EvaluationError(const std::string& what, std::size_t index) : std::domain_error(what), index_(index) {}
  /// 1-based position of the offending digit.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

DigitSequence expand(const CFMap& map, double x, std::size_t n);

/// N/(d1 + e1 N/(d2 + ... + e_{n-1} N/(d_n + e_n tail))), evaluated backwards.
double evaluate(int N, std::span<const DigitEntry> entries, double tail = 0.0);
inline double evaluate(const DigitSequence& seq, double tail = 0.0) { return evaluate(seq.N, seq.entries, tail); }

/// |x - c_k| for k = 1..n, c_k the k-th convergent (tail 0).
std::vector<double> convergence_profile(const CFMap& map, double x, std::size_t n);

}  // namespace cfdyn
