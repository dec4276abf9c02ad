#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cfdyn/constants.hpp"
#include "cfdyn/matching.hpp"

using namespace cfdyn;

TEST_SUITE("matching") {
  TEST_CASE("matching exponents at known parameters") {
    CHECK(check_matching(2, std::sqrt(2.0) - 1, 1, 0).matched);
    CHECK(check_matching(2, (std::sqrt(33.0) - 5) / 2, 2, 0).matched);
    const MatchingRecord r = check_matching(2, 0.40, 3, 3);
    CHECK(r.matched);
    CHECK(r.residual < 1e-12);
    CHECK(r.K == 3);
    CHECK(r.M == 3);
    CHECK_FALSE(check_matching(2, 0.40, 1, 1).matched);
    CHECK_THROWS_AS(check_matching(2, 0.40, -1, 1), std::invalid_argument);
  }

  TEST_CASE("third iterates follow the closed forms") {
    for (double a : {0.38, 0.385, 0.413}) {
      const ThreeStepCheck c = three_step_check(a);
      CHECK(c.region > 0);
      CHECK(c.digits_ok);
      CHECK(c.worst() < 1e-10);
      CHECK(c.matching_residual < 1e-10);
    }
    CHECK(three_step_check(0.385).region == 2);
    CHECK(three_step_check(0.405).region == 3);
    const ThreeStepReport rep = verify_three_step_matching(100, 1e-10, 7);
    CHECK(rep.pass);
    CHECK(rep.checks.size() == 300);
    CHECK(rep.worst < 1e-10);
    CHECK(rep.failures.empty());
  }

  TEST_CASE("regions cover the plateau") {
    const auto r = plateau_regions();
    CHECK(r[0].lo == doctest::Approx(constants::plateau_lower()).epsilon(1e-14));
    CHECK(r[2].hi == doctest::Approx(constants::plateau_upper()).epsilon(1e-14));
    CHECK(r[0].hi == doctest::Approx(r[1].lo).epsilon(1e-14));
    CHECK(r[1].hi == doctest::Approx(r[2].lo).epsilon(1e-14));
    CHECK(r[1].hi == doctest::Approx((std::sqrt(129.0) - 9) / 6).epsilon(1e-14));
  }

  TEST_CASE("quilting for nearby parameters") {
    for (auto [a, b] : {std::pair{0.385, 0.39}, {0.395, 0.40}, {0.405, 0.41}}) {
      const QuiltingReport q = quilting_verify(a, b);
      CHECK(q.pass);
      CHECK(q.y_identity_low < 1e-14);
      CHECK(q.y_identity_high < 1e-14);
      CHECK(q.region_mismatch < 1e-12);
    }
    const double F = constants::plateau_heights().F;
    const double B = constants::plateau_heights().B;
    CHECK(std::abs(2 / (3 + F) - 2 / (4 + B)) < 1e-15);
  }

  TEST_CASE("quilting for distant parameters") {
    const QuiltingReport q = quilting_verify(0.38, 0.41);
    CHECK(q.pass);
    CHECK_FALSE(q.chain_exact);
    CHECK(q.chain_mismatch > 1e-6);
  }

  TEST_CASE("wrong heights break the quilt") {
    const auto h = constants::plateau_heights();
    std::map<std::string, double> bad{{"A", h.A}, {"B", h.B}, {"C", h.C}, {"D", h.D}, {"E", h.E}, {"F", h.F + 0.01}};
    CHECK_FALSE(quilting_verify(0.385, 0.39, bad).pass);
    CHECK_THROWS(quilting_verify(0.3, 0.39));
  }

  TEST_CASE("scan of the N=2 family") {
    MatchingScanOptions o;
    o.n_samples = 2000;
    const MatchingScan s = scan_matching(2, o);
    CHECK(s.sampled + s.skipped == 2000);
    CHECK(s.observed(3, 3));
    CHECK(s.observed(4, 4));
    CHECK(s.observed(3, 5));
    CHECK_FALSE(s.observed(1, 1));
    CHECK_FALSE(s.observed(1, 2));
    CHECK_FALSE(s.observed(2, 2));
    for (const auto& r : s.minimal) {
      CHECK(r.matched);
      CHECK(r.residual < o.tol);
    }
    const MatchingScan t = scan_matching(2, o);
    CHECK(t.seen == s.seen);
    CHECK(t.ambiguous == s.ambiguous);
  }

  TEST_CASE("a match at (M,K) persists at (M+1,K+1)") {
    MatchingScanOptions o;
    o.n_samples = 500;
    const MatchingScan s = scan_matching(2, o);
    // One more step multiplies the residual by at most |T'| <= N/alpha^2.
    for (const auto& r : s.minimal) {
      const double next = check_matching(2, r.alpha, r.K + 1, r.M + 1).residual;
      CHECK(next <= r.residual * 2 / (r.alpha * r.alpha) * (1 + 1e-6) + 1e-15);
    }
  }

  TEST_CASE("isolated matches") {
    // Double zeros of the residual: it grows like (alpha - a)^2 on both sides,
    // so no interval of parameters matches.
    for (auto [a, M, K] : {std::tuple{1.0 / 3, 1, 3}, {1.0 / 3, 2, 4}, {1.0 / 43, 1, 5}}) {
      CHECK(check_matching(2, a, K, M).residual < 1e-12);
      const double r5 = check_matching(2, a + 1e-5, K, M).residual;
      const double r6 = check_matching(2, a + 1e-6, K, M).residual;
      CHECK(r5 / r6 == doctest::Approx(100).epsilon(2e-2));
      CHECK(check_matching(2, a + 1e-3, K, M).residual > 1e-9);
      CHECK(check_matching(2, a - 1e-3, K, M).residual > 1e-9);
    }
  }
}
