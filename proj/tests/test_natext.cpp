#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cfdyn/constants.hpp"
#include "cfdyn/matching.hpp"
#include "cfdyn/natext.hpp"
#include "cfdyn/rng.hpp"

using namespace cfdyn;

namespace {

std::vector<double> region_samples() {
  std::vector<double> a;
  for (const auto& r : plateau_regions())
    for (double t : {0.1, 0.5, 0.9}) a.push_back(r.lo + t * (r.hi - r.lo));
  return a;
}

double worst_equation_residual(const HeightSystem& sys, const HeightSolution& sol) {
  double worst = 0.0;
  for (const auto& eq : sys.equations) {
    double rhs = eq.sign * sys.N / (eq.digit + sol.at(eq.source));
    if (std::isinf(sol.at(eq.target))) continue;
    worst = std::max(worst, std::abs(sol.at(eq.target) - rhs));
  }
  return worst;
}

}  // namespace

TEST_SUITE("natext") {
  TEST_CASE("first coordinate follows the base map") {
    const NatExtMap nat(named_map("bar_T"));
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      Point p{rng.uniform(0.5, 1.0), rng.uniform(0.0, 1.0)};
      Point q = nat.apply(p);
      Step s = nat.base().apply(p.x);
      CHECK(q.x == s.value);
      CHECK(q.y == doctest::Approx(s.epsilon * 2.0 / (s.digit + p.y)));
    }
  }

  TEST_CASE("simulated cloud of the digits 1,2 extension") {
    auto pts = simulate_domain(NatExtMap(named_map("four_exp_12")), {1.3, 0.0}, 1000, 20'000);
    REQUIRE(pts.size() == 20'000);
    for (const auto& p : pts) {
      CHECK(p.y >= 1.0 - 1e-12);
      CHECK(p.y <= 2.0 + 1e-12);
    }
  }

  TEST_CASE("heights of T_{sqrt2-1,2}") {
    const HeightSystem sys = named_height_system("two_exp_sqrt2");
    const HeightSolution sol = solve_heights(sys);
    const auto want = constants::sqrt2_heights();
    CHECK(sol.at("A") == doctest::Approx(want.A).epsilon(1e-13));
    CHECK(sol.at("B") == doctest::Approx(want.B).epsilon(1e-13));
    CHECK(sol.at("C") == doctest::Approx(want.C).epsilon(1e-13));
    CHECK(std::abs(sol.at("A") - (std::sqrt(33.0) - 5) / 2) < 1e-12);
    CHECK(worst_equation_residual(sys, sol) < 1e-12);
    CHECK_THROWS_AS(sol.at("Z"), std::out_of_range);
  }

  TEST_CASE("six plateau heights") {
    const HeightSystem sys = named_height_system("theorem2");
    const HeightSolution sol = solve_heights(sys);
    const auto w = constants::plateau_heights();
    for (auto [k, v] : {std::pair{"A", w.A}, {"B", w.B}, {"C", w.C}, {"D", w.D}, {"E", w.E}, {"F", w.F}}) {
      CHECK(std::abs(sol.at(k) - v) < 1e-12);
    }
    CHECK(worst_equation_residual(sys, sol) < 1e-12);
  }

  TEST_CASE("flipped left branch has an infinite height") {
    const HeightSolution sol = solve_heights(named_height_system("four_exp_15"));
    CHECK(sol.at("A") == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::isinf(sol.at("B")));
    CHECK(sol.at("B") > 0);
  }

  TEST_CASE("parabolic system does not converge") {
    CHECK_THROWS_AS(solve_heights(named_height_system("four_exp_24")), std::runtime_error);
  }

  TEST_CASE("malformed systems") {
    CHECK_THROWS_AS(solve_heights({2, {}}), std::invalid_argument);
    CHECK_THROWS_AS(solve_heights({2, {{"A", 1, 1, "B"}}}), std::invalid_argument);
    CHECK_THROWS_AS(solve_heights({2, {{"A", 1, 1, "A"}, {"A", 1, 2, "A"}}}), std::invalid_argument);
    CHECK_THROWS_AS(named_height_system("nope"), std::invalid_argument);
  }

  TEST_CASE("domain validation") {
    CHECK_THROWS_AS(NatExtDomain(Interval(0, 1), {}), std::invalid_argument);
    CHECK_THROWS_AS(NatExtDomain(Interval(0, 1), {{Interval(0, 0.5), 0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(NatExtDomain(Interval(0, 1), {{Interval(0, 1), 2, 1}}), std::invalid_argument);
    NatExtDomain d(Interval(0, 1), {{Interval(0, 0.5), 0, 1}, {Interval(0.5, 1), 0, 2}});
    CHECK(d.area() == doctest::Approx(1.5));
    CHECK(d.bounded());
  }

  TEST_CASE("rectangles") {
    std::vector<Rectangle> a{{Interval(0, 1), Interval(0, 1)}};
    std::vector<Rectangle> b{{Interval(0.5, 1.5), Interval(0, 1)}};
    CHECK(symmetric_difference_area(a, a) == doctest::Approx(0.0));
    CHECK(symmetric_difference_area(a, b) == doctest::Approx(1.0));
    const NatExtMap nat(named_map("four_exp_12"));
    std::vector<Rectangle> dom{{Interval(1, 2), Interval(1, 2)}};
    auto img = push_forward(nat, dom);
    CHECK(img.size() == 2);
    CHECK(symmetric_difference_area(img, dom) < 1e-12);
  }

  TEST_CASE("known domains are tiled by their images") {
    for (const char* n : {"four_exp_12", "two_exp_sqrt2"}) {
      const NatExtModel m = natext_model(n);
      BijectivityReport r = verify_bijectivity(m.map, m.domain);
      CHECK_FALSE(r.skipped);
      CHECK(r.overlap < 1e-10);
      CHECK(r.gap < 1e-10);
      CHECK(r.excess < 1e-10);
    }
    for (double a : region_samples()) {
      const NatExtModel m = natext_model("plateau", a);
      CHECK(verify_bijectivity(m.map, m.domain).worst() < 1e-10);
    }
    const NatExtModel inf = natext_model("four_exp_15");
    CHECK(verify_bijectivity(inf.map, inf.domain).skipped);
  }

  TEST_CASE("perturbed heights are detected") {
    const NatExtModel m = natext_model("two_exp_sqrt2");
    for (const char* h : {"A", "B", "C"}) {
      const NatExtDomain bad = m.domain.perturbed(m.heights.at(h), 0.01);
      const double w = verify_bijectivity(m.map, bad).worst();
      MESSAGE("height " << h << " + 0.01: " << w);
      CHECK(w > 1e-3);
    }
  }

  TEST_CASE("plateau heights do not depend on the region") {
    const auto ref = natext_model("plateau", region_samples().front()).heights;
    for (double a : region_samples()) CHECK(natext_model("plateau", a).heights == ref);
  }

  TEST_CASE("projected densities match the closed forms") {
    for (const char* n : {"four_exp_12", "four_exp_15", "two_exp_sqrt2"}) {
      const NatExtModel m = natext_model(n);
      const AnalyticDensity f = density_from_domain(m.domain, m.map.base().modulus());
      CHECK(f.normalizable());
      CHECK(l2_distance(f, analytic_density(n)) < 1e-10);
      auto tests = random_intervals(f.domain(), 20, 2);
      CHECK(check_invariance(m.map.base(), f, tests) < 1e-8);
    }
    for (double a : region_samples()) {
      const NatExtModel m = natext_model("plateau", a);
      const AnalyticDensity f = density_from_domain(m.domain, 2);
      CHECK(f.raw_integral() == doctest::Approx(constants::plateau_inverse_normalizer()).epsilon(1e-12));
      CHECK(l2_distance(f, analytic_density("plateau", a)) < 1e-10);
    }
    const NatExtModel m = natext_model("four_exp_24");
    CHECK_FALSE(density_from_domain(m.domain, 4).normalizable());
  }

  TEST_CASE("models need valid parameters") {
    CHECK_THROWS_AS(natext_model("plateau"), std::invalid_argument);
    CHECK_THROWS_AS(natext_model("plateau", 0.3), std::domain_error);
    CHECK_THROWS_AS(natext_model("bar_T"), std::invalid_argument);
  }
}
