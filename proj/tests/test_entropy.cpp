#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cfdyn/constants.hpp"
#include "cfdyn/entropy.hpp"

using namespace cfdyn;

namespace {

// Independent high-precision quadrature (mpmath, 30 digits).
constexpr double kEntropySqrt2 = 1.13777958256136;
constexpr double kEntropyFourExp12 = 0.667484284724886;
constexpr double kEntropyFourExp15 = 0.647013292295614;

}  // namespace

TEST_SUITE("entropy") {
  TEST_CASE("Rohlin integral against quadrature oracles") {
    CHECK(rohlin_entropy(named_map("two_exp_sqrt2"), analytic_density("two_exp_sqrt2")) ==
          doctest::Approx(kEntropySqrt2).epsilon(1e-10));
    CHECK(rohlin_entropy(named_map("four_exp_12"), analytic_density("four_exp_12")) ==
          doctest::Approx(kEntropyFourExp12).epsilon(1e-10));
    CHECK(rohlin_entropy(named_map("four_exp_15"), analytic_density("four_exp_15")) ==
          doctest::Approx(kEntropyFourExp15).epsilon(1e-10));
    CHECK(std::abs(kEntropySqrt2 - 1.14) < 1e-2);
  }

  TEST_CASE("Rohlin integral is constant on the plateau") {
    const double lo = constants::plateau_lower(), hi = constants::plateau_upper();
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double a = lo + t * (hi - lo);
      CHECK(rohlin_entropy(greedy_alpha(2, a), analytic_density("plateau", a)) ==
            doctest::Approx(kEntropySqrt2).epsilon(1e-10));
    }
  }

  TEST_CASE("Rohlin integral rejects bad densities") {
    CHECK_THROWS_AS(rohlin_entropy(named_map("four_exp_24"), analytic_density("four_exp_24_infinite")),
                    std::invalid_argument);
    DensityEstimate d = DensityEstimate::uniform(Interval(1, 2), 10);
    d.values[0] = 5.0;
    CHECK_THROWS_AS(rohlin_entropy(named_map("four_exp_12"), d), std::invalid_argument);
  }

  TEST_CASE("Rohlin integral of a GKL estimate") {
    const CFMap T = named_map("four_exp_12");
    CHECK(rohlin_entropy(T, gkl_density(T, 10, 1000)) == doctest::Approx(kEntropyFourExp12).epsilon(1e-4));
  }

  TEST_CASE("Birkhoff averages agree with the Rohlin integral") {
    for (const char* n : {"four_exp_12", "four_exp_15", "two_exp_sqrt2"}) {
      const CFMap T = named_map(n);
      const double h = rohlin_entropy(T, analytic_density(n));
      const BirkhoffEstimate b = birkhoff_entropy(T, 200, 10'000);
      MESSAGE(n << ": Rohlin " << h << ", Birkhoff " << b.h << " +- " << b.std_error);
      CHECK(std::abs(b.h - h) < std::max(1e-2, 3 * b.std_error));
      CHECK(b.std_error > 0);
    }
    const BirkhoffEstimate big = birkhoff_entropy(named_map("two_exp_sqrt2"), 1000, 10'000);
    CHECK(std::abs(big.h - 1.14) < 1e-2);
  }

  TEST_CASE("Birkhoff values on the plateau") {
    std::vector<double> h;
    for (double a : {0.38, 0.40, 0.41}) h.push_back(birkhoff_entropy(greedy_alpha(2, a), 100, 10'000).h);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(h[i] - h[j]) < 1e-2);
  }

  TEST_CASE("Birkhoff estimate is deterministic") {
    const CFMap T = greedy_alpha(2, 0.2);
    BirkhoffEstimate a = birkhoff_entropy(T, 10, 1000, 5);
    BirkhoffEstimate b = birkhoff_entropy(T, 10, 1000, 5);
    CHECK(a.h == b.h);
    CHECK(a.std_error == b.std_error);
    CHECK(birkhoff_entropy(T, 1, 1000).std_error == 0.0);
    CHECK_THROWS_AS(birkhoff_entropy(T, 0, 1000), std::invalid_argument);
  }

  TEST_CASE("orbit started at a fixed point") {
    const CFMap T = named_map("four_exp_12");
    const double x = (std::sqrt(17.0) - 1) / 2;
    CHECK(birkhoff_average(T, x, 20) == doctest::Approx(std::log(4.0) - 2 * std::log(x)).epsilon(1e-9));
  }

  TEST_CASE("sweeps") {
    EntropyBudget b;
    b.n_orbits = 8;
    b.n_iters = 2000;
    const std::vector<double> one{0.3};
    EntropyCurve c = entropy_sweep(2, one, EntropyMethod::birkhoff, b);
    BirkhoffEstimate direct = birkhoff_entropy(greedy_alpha(2, 0.3), 8, 2000, b.seed, b.burn_in);
    CHECK(c.samples[0].h == direct.h);

    const std::vector<double> bad{0.3, 0.9};
    c = entropy_sweep(2, bad, EntropyMethod::birkhoff, b);
    CHECK(c.samples[0].error.empty());
    CHECK_FALSE(c.samples[1].error.empty());
    CHECK(std::isnan(c.samples[1].h));

    auto grid = linear_grid(0.02, 0.41, 40);
    c = entropy_sweep(2, grid, EntropyMethod::birkhoff, b);
    for (const auto& s : c.samples) {
      CHECK(s.h > 0);
      CHECK(s.h < std::log(2.0) + 2 * std::log(1 / s.alpha));
    }

    b.gkl_iters = 6;
    b.grid_cells = 500;
    const std::vector<double> sq{std::sqrt(2.0) - 1};
    c = entropy_sweep(2, sq, EntropyMethod::rohlin_gkl, b);
    CHECK(c.samples[0].h == doctest::Approx(kEntropySqrt2).epsilon(1e-2));
  }

  TEST_CASE("method names and grids") {
    CHECK(parse_entropy_method("birkhoff") == EntropyMethod::birkhoff);
    CHECK(parse_entropy_method("rohlin-gkl") == EntropyMethod::rohlin_gkl);
    CHECK(to_string(EntropyMethod::rohlin_gkl) == "rohlin-gkl");
    CHECK_THROWS_AS(parse_entropy_method("magic"), std::invalid_argument);
    auto g = linear_grid(0.0, 1.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.back() == 1.0);
    CHECK(g[2] == doctest::Approx(0.5));
    CHECK(linear_grid(0.3, 0.7, 1) == std::vector<double>{0.3});
    CHECK_THROWS(linear_grid(0, 1, 0));
  }
}
