#include "asep/error.hpp"
#include "asep/rng.hpp"
#include "asep/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace asep;

TEST_CASE("seed derivation") {
  // first output of the reference generator seeded with 0
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
  std::set<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 1000; ++r) seeds.insert(derive_seed(7, r));
  CHECK(seeds.size() == 1000);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  CHECK(derive_seed(7, 3) != derive_seed(8, 3));
}

TEST_CASE("rng streams are reproducible") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("geometric and exponential draws") {
  Rng rng(8);
  const int n = 200000;
  double g = 0.0, e = 0.0;
  for (int i = 0; i < n; ++i) {
    g += static_cast<double>(rng.geometric(0.25));
    e += rng.exponential(4.0);
  }
  // means r/(1-r) = 1/3 and 1/4; sds sqrt(r)/(1-r) and 1/4
  CHECK(std::fabs(g / n - 1.0 / 3.0) < 4 * (std::sqrt(0.25) / 0.75) / std::sqrt(n));
  CHECK(std::fabs(e / n - 0.25) < 4 * 0.25 / std::sqrt(n));
  CHECK(rng.geometric(0.0) == 0);
}

TEST_CASE("chi-square upper tail") {
  CHECK(chi_square_sf(0.0, 3) == doctest::Approx(1.0));
  // chi2 with 2 dof is exponential with mean 2
  CHECK(chi_square_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("goodness of fit") {
  const std::vector<double> probs{0.25, 0.25, 0.25, 0.25};
  const auto ok = chi_square_gof({250, 240, 260, 250}, probs);
  CHECK(ok.p_value > 0.5);
  CHECK(ok.dof == 3);
  const auto bad = chi_square_gof({400, 200, 200, 200}, probs);
  CHECK(bad.p_value < 1e-6);
  // uncovered mass forms its own bin
  const auto tail = chi_square_gof({500, 500}, {0.4, 0.4}, 0);
  CHECK(tail.p_value < 1e-6);
  const auto tail_ok = chi_square_gof({400, 400}, {0.4, 0.4}, 200);
  CHECK(tail_ok.p_value > 0.5);
}

TEST_CASE("homogeneity") {
  CHECK(chi_square_homogeneity({100, 200, 300}, {110, 190, 300}).p_value > 0.3);
  CHECK(chi_square_homogeneity({100, 200, 300}, {300, 200, 100}).p_value < 1e-6);
}
