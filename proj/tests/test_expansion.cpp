#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cfdyn/expansion.hpp"
#include "cfdyn/rng.hpp"

using namespace cfdyn;

namespace {

// x = 4/(1+x)
const double kGolden4 = 1.5615528128088303;

}  // namespace

TEST_SUITE("expansion") {
  TEST_CASE("fixed point of the digit-1 branch expands to all ones") {
    CHECK(kGolden4 == doctest::Approx((std::sqrt(17.0) - 1) / 2).epsilon(1e-15));
    DigitSequence s = expand(named_map("four_exp_12"), kGolden4, 30);
    for (const auto& e : s.entries) {
      CHECK(e.digit == 1);
      CHECK(e.epsilon == 1);
    }
  }

  TEST_CASE("expansion of sqrt2 under T_{sqrt2-1,2}") {
    DigitSequence s = expand(named_map("two_exp_sqrt2"), std::sqrt(2.0), 2);
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries[0] == DigitEntry{1, 1});
    CHECK(s.entries[1] == DigitEntry{4, 1});
    CHECK(s.shorthand() == "[1, 1/4]_2");
  }

  TEST_CASE("bar_T digits and signs follow its branch table") {
    const CFMap T = named_map("bar_T");
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
      DigitSequence s = expand(T, rng.uniform(0.5, 1.0), 30);
      for (const auto& e : s.entries) {
        bool ok = (e.digit == 2 && e.epsilon == 1) || (e.digit == 3 && (e.epsilon == 1 || e.epsilon == -1)) ||
                  (e.digit == 4 && e.epsilon == -1);
        CHECK(ok);
      }
    }
  }

  TEST_CASE("convergents of the all-ones word") {
    std::vector<DigitEntry> ones(60, DigitEntry{1, 1});
    double prev = INFINITY;
    for (std::size_t k : {5u, 10u, 20u, 40u, 60u}) {
      double c = evaluate(4, std::span<const DigitEntry>(ones.data(), k));
      double err = std::abs(c - kGolden4);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-10);
    CHECK(evaluate(4, std::vector<DigitEntry>{{1, 1}}) == 4.0);
  }

  TEST_CASE("zero denominator reports its position") {
    // 2/(1 + (-1) * 2/(2 + 0)) -> 1 - 1 = 0
    std::vector<DigitEntry> bad{{1, -1}, {2, 1}};
    try {
      evaluate(2, bad);
      FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
      CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(evaluate(2, std::vector<DigitEntry>{{0, 1}}), EvaluationError);
  }

  TEST_CASE("round trip with the exact tail") {
    std::vector<CFMap> maps;
    for (const auto& n : named_map_names()) maps.push_back(named_map(n));
    maps.push_back(greedy_alpha(2, 0.39));
    maps.push_back(greedy_alpha(9, 2.0));
    maps.push_back(greedy_alpha(36, 0.7));
    Rng rng(99);
    for (const auto& T : maps) {
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) {
        double x = rng.uniform(T.domain().lo(), T.domain().hi());
        std::size_t n = 1 + rng.next() % 50;
        DigitSequence s = expand(T, x, n);
        worst = std::max(worst, std::abs(evaluate(s, s.remainder) - x));
      }
      CHECK(worst < 1e-10);
    }
  }

  TEST_CASE("convergence profile") {
    auto p = convergence_profile(named_map("four_exp_12"), 1.5, 40);
    REQUIRE(p.size() == 40);
    CHECK(p.back() < 1e-8);

    auto q = convergence_profile(named_map("bar_T"), 0.75, 60);
    CHECK(q.back() < 1e-6);
    for (std::size_t k = 20; k + 1 < q.size(); ++k) CHECK(q[k + 1] <= q[k] * 1.5 + 1e-15);

    Rng rng(8);
    for (const auto& n : named_map_names()) {
      if (n == "four_exp_24") continue;
      const CFMap T = named_map(n);
      for (int i = 0; i < 50; ++i) {
        auto r = convergence_profile(T, rng.uniform(T.domain().lo(), T.domain().hi()), 60);
        CHECK(r.back() < 1e-6);
      }
    }
  }

  TEST_CASE("convergents approach slowly near a parabolic fixed point") {
    // x = 4/(4 - x) has the double root 2, so errors decay polynomially.
    auto r = convergence_profile(named_map("four_exp_24"), 1.9, 400);
    CHECK(r[399] < r[39]);
    CHECK(r[399] < 1e-2);
    CHECK(r[399] > 1e-8);
  }

  TEST_CASE("left endpoint takes the largest digit") {
    for (auto [N, a] : {std::pair{2, 0.3}, {9, 2.0}, {36, 1.5}}) {
      DigitSequence s = expand(greedy_alpha(N, a), a, 1);
      CHECK(s.entries[0].digit == digit_alphabet(N, a).n_max);
    }
  }
}
