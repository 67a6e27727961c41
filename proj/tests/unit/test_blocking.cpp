#include "asep/blocking.hpp"
#include "asep/error.hpp"
#include "asep/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace asep;

TEST_CASE("site marginals") {
  const AsepParams p(0.5, 0.0);
  CHECK(marginal(0, 1, p) == doctest::Approx(0.5));
  CHECK(marginal(2, 0, AsepParams(0.3, 2.0)) == doctest::Approx(0.5));
  // occupation grows to the right: 1/(1+q^3)
  CHECK(marginal(3, 1, p) == doctest::Approx(8.0 / 9.0));
  CHECK(marginal(3, 0, p) == doctest::Approx(1.0 / 9.0));
  CHECK(marginal(-3, 1, p) == doctest::Approx(1.0 / 9.0));
  for (int i = -6; i <= 6; ++i) {
    CHECK(marginal(i, 1, AsepParams(0.7, 0.4)) == doctest::Approx(oracle::occupied(i, 0.7, 0.4)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(marginal(0, 2, p), DomainError);
}

TEST_CASE("window state conventions") {
  WindowState w(-2, 2, {0, 1, 0, 1, 1});
  CHECK(w.at(-5) == 0);
  CHECK(w.at(7) == 1);
  CHECK(w.particle_count() == 3);
  CHECK(w.particle_sites() == std::vector<int>{-1, 1, 2});
  CHECK(w.particles_at_or_left_of(0) == 1);
  CHECK(w.particles_at_or_left_of(4) == 5);
  // holes right of 0: none inside (sites 1, 2 full); particles at or left of 0: one
  CHECK(w.conserved_N() == -1);
  CHECK_THROWS_AS(w.set(3, 1), DomainError);
  CHECK_THROWS_AS(WindowState(-2, 2, {0, 1}), DomainError);
  CHECK_THROWS_AS(WindowState(3, 2), DomainError);

  // a window that does not contain the origin
  WindowState right(3, 5, {0, 1, 1});
  CHECK(right.conserved_N() == 2 + 1);  // holes at 1, 2 (frozen) and 3
}

TEST_CASE("window checks") {
  const AsepParams p(0.5, 0.0);
  CHECK_THROWS_AS(check_window(-5, 5, p), WindowTooNarrow);
  CHECK_NOTHROW(check_window(-45, 45, p));
  const auto [lo, hi] = window_for(p);
  CHECK_NOTHROW(check_window(lo, hi, p));
  CHECK_THROWS_AS(check_window(lo + 1, hi, p), WindowTooNarrow);
  CHECK_THROWS_AS(check_window(-5, 5, p, 0.0), DomainError);
}

TEST_CASE("exact window sampling") {
  const AsepParams p(0.5, 0.0);
  Rng a(99), b(99);
  CHECK(sample_blocking(-45, 45, p, a) == sample_blocking(-45, 45, p, b));

  // small q: essentially the ground state away from the symmetric site c
  const AsepParams cold(0.01, 0.0);
  Rng r(3);
  int ground = 0;
  for (int t = 0; t < 1000; ++t) {
    const WindowState s = sample_blocking(-10, 10, cold, r, 1e-12);
    bool ok = true;
    for (int i = -10; i <= 10; ++i) {
      if (i != 0) ok = ok && s.at(i) == (i > 0 ? 1 : 0);
    }
    ground += ok;
  }
  CHECK(ground > 950);

  // site 2 occupancy 1/(1+q^2) = 0.8
  Rng r2(11);
  const int n = 100000;
  int hits = 0;
  for (int t = 0; t < n; ++t) hits += sample_blocking(-50, 50, p, r2).at(2);
  const double sigma = std::sqrt(0.8 * 0.2 / n);
  CHECK(std::fabs(hits / static_cast<double>(n) - 0.8) < 3 * sigma);
}

TEST_CASE("conserved quantity law") {
  for (double qv : {0.1, 0.5, 0.9}) {
    for (double c : {-1.5, 0.0, 0.3, 2.0}) {
      const AsepParams p(qv, c);
      double sum = 0.0;
      for (long n = -200; n <= 200; ++n) sum += prob_N(n, p);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      for (long n = -20; n <= 20; ++n) {
        CHECK(rel_deviation(prob_N(n, p) / prob_N(n - 1, p), std::pow(qv, n - c)) < 1e-10);
        CHECK(prob_N_at(0, n, p) == prob_N(n, p));
        CHECK(prob_N_at(1, n, p) == prob_N(n + 1, p));
      }
    }
  }
  const AsepParams p(0.5, 0.0);
  double s40 = 0.0;
  for (long n = -40; n <= 40; ++n) s40 += prob_N(n, p);
  CHECK(std::fabs(s40 - 1.0) < 1e-10);
}

TEST_CASE("conserved quantity law against a convolution of site counts") {
  for (auto [qv, c] : {std::pair{0.5, 0.0}, std::pair{0.7, 1.3}, std::pair{0.3, -2.0}}) {
    // particles at or left of 0 and holes right of 0 are independent
    const auto left = oracle::left_particle_law(0, qv, c);
    // holes right of 0: occupied(i) -> 1 - occupied(i) for i in [1, R]
    int R = 1;
    while (1.0 - oracle::occupied(R, qv, c) > 1e-18) ++R;
    std::vector<double> holes{1.0};
    for (int i = 1; i <= R; ++i) {
      const double h = 1.0 - oracle::occupied(i, qv, c);
      std::vector<double> next(holes.size() + 1, 0.0);
      for (std::size_t k = 0; k < holes.size(); ++k) {
        next[k] += holes[k] * (1.0 - h);
        next[k + 1] += holes[k] * h;
      }
      holes.swap(next);
    }
    std::map<long, double> law;
    for (std::size_t a = 0; a < holes.size(); ++a) {
      for (std::size_t b = 0; b < left.size(); ++b) law[static_cast<long>(a) - static_cast<long>(b)] += holes[a] * left[b];
    }
    const AsepParams p(qv, c);
    for (long n = -6; n <= 6; ++n) CHECK(prob_N(n, p) == doctest::Approx(law[n]).epsilon(1e-10));
  }
}

TEST_CASE("left particle law") {
  for (double qv : {0.1, 0.5, 0.9}) {
    for (double c : {-1.5, 0.0, 2.0}) {
      for (int m : {-3, 0, 2}) {
        const AsepParams p(qv, c);
        const auto ref = oracle::left_particle_law(m, qv, c);
        double sum = 0.0;
        for (long k = 0; k <= 200; ++k) {
          const double v = prob_left_particles(m, k, p);
          sum += v;
          const double want = k < static_cast<long>(ref.size()) ? ref[static_cast<std::size_t>(k)] : 0.0;
          // the oracle drops far-left sites, which only matters deep in the tail
          if (want > 1e-10) {
            CHECK(rel_deviation(v, want) < 1e-9);
          } else {
            CHECK(std::fabs(v - want) < 1e-16);
          }
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // empty left tail
        double empty = 1.0;
        for (int j = m; j > m - 4000; --j) empty /= 1.0 + std::pow(qv, c - j);
        CHECK(rel_deviation(prob_left_particles(m, 0, p), empty) < 1e-11);
      }
    }
  }
  CHECK(prob_left_particles(0, -1, AsepParams(0.5, 0.0)) == 0.0);
}

TEST_CASE("right hole law") {
  for (double qv : {0.2, 0.5, 0.9}) {
    const AsepParams p(qv, 0.4);
    double sum = 0.0;
    for (long n = 0; n <= 400; ++n) sum += prob_right_holes(1, n, p);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    double none = 1.0;
    for (int j = 2; j < 4000; ++j) none *= oracle::occupied(j, qv, 0.4);
    CHECK(rel_deviation(prob_right_holes(1, 0, p), none) < 1e-11);
    for (int m = -3; m <= 3; ++m) {
      for (long n = 0; n <= 20; ++n) {
        CHECK(rel_deviation(prob_right_holes(m, n, p), prob_left_particles(m, n, p.with_c(2 * m + 1 - p.c))) < 1e-10);
      }
    }
  }
}

TEST_CASE("finite window law") {
  const AsepParams p(0.5, 0.0);
  // width 4 window (m1, m2) = (-3, 2)
  const CountDist brute = brute_force_window_law(-3, 2, p);
  CHECK(brute.total() == doctest::Approx(1.0));
  CHECK(rel_deviation(prob_window_particles(-3, 2, 2, p), brute.at(2)) < 1e-12);
  CHECK(rel_deviation(prob_window_particles(-3, 2, 0, p), std::exp(-log_neg_qpow_finite(-1.0, p.q, 4))) < 1e-12);
  double full = 1.0;
  for (int i = -2; i <= 1; ++i) full *= marginal(i, 1, p);
  CHECK(rel_deviation(prob_window_particles(-3, 2, 4, p), full) < 1e-12);

  // single site
  const AsepParams p2(0.3, 1.2);
  const double a = std::pow(0.3, 1.2 - 5 + 1);
  CHECK(prob_window_particles(3, 5, 0, p2) == doctest::Approx(1.0 / (1.0 + a)));
  CHECK(prob_window_particles(3, 5, 1, p2) == doctest::Approx(a / (1.0 + a)));
  CHECK(prob_window_particles(3, 4, 0, p2) == doctest::Approx(1.0));

  CHECK_THROWS_AS(prob_window_particles(0, 3, 3, p), DomainError);
  CHECK_THROWS_AS(prob_window_particles(2, 2, 0, p), DomainError);
  CHECK_THROWS_AS(brute_force_window_law(0, 22, p), SizeLimit);

  for (double qv : {0.1, 0.9}) {
    for (int m2 : {-4, 1, 6}) {
      const AsepParams pq(qv, -0.5);
      const auto conv = oracle::poisson_binomial(m2 - 9, m2 - 1, qv, -0.5);
      for (int k = 0; k <= 9; ++k) {
        CHECK(rel_deviation(prob_window_particles(m2 - 10, m2, k, pq), conv[static_cast<std::size_t>(k)]) < 1e-10);
      }
    }
  }
}

TEST_CASE("shift relations") {
  for (long k = 0; k <= 5; ++k) {
    const ShiftReport rep = shift_relation_checks(AsepParams(0.5, 0.0), 0, k);
    CHECK(rep.checks.size() == 6);
    CHECK(rep.all_pass());
  }
  for (double c : {-1.5, 0.37, 2.0}) {
    for (int m : {-2, 1}) {
      CHECK(shift_relation_checks(AsepParams(0.9, c), m, 3).all_pass());
    }
  }
}
