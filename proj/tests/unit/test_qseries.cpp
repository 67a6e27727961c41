#include "asep/error.hpp"
#include "asep/partitions.hpp"
#include "asep/qseries.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace asep;

TEST_CASE("QParam rejects values outside (0,1)") {
  CHECK_THROWS_AS(QParam(0.0), DomainError);
  CHECK_THROWS_AS(QParam(1.0), DomainError);
  CHECK_THROWS_AS(QParam(-0.2), DomainError);
  CHECK_THROWS_AS(QParam(std::nan("")), DomainError);
  CHECK(QParam(0.5).pow(-2.0) == doctest::Approx(4.0));
}

TEST_CASE("finite pochhammer") {
  const QParam q(0.5);
  CHECK(pochhammer_finite(0.3, q, 0) == 1.0);
  CHECK(pochhammer_finite(2.0, q, 2) == 0.0);
  // literal loop
  double lit = 1.0;
  for (int i = 0; i < 3; ++i) lit *= 1.0 - 0.5 * std::pow(0.5, i);
  CHECK(pochhammer_finite(0.5, q, 3) == doctest::Approx(lit).epsilon(1e-15));
  CHECK_THROWS_AS(pochhammer_finite(0.5, q, -1), DomainError);
}

TEST_CASE("infinite pochhammer against exact rationals") {
  const QParam q(0.5);
  const Bounded zero = pochhammer_infinite(0.0, q);
  CHECK(zero.value == 1.0);
  CHECK(zero.rel_bound == 0.0);

  TruncationPolicy pol;
  pol.eps = 1e-15;
  const Bounded half = pochhammer_infinite(0.5, q, pol);
  const double exact = static_cast<double>(oracle::pochhammer_rational(oracle::Rational(1, 2), oracle::Rational(1, 2), 60));
  CHECK(std::fabs(half.value - exact) / exact <= half.rel_bound + 1e-15);
  CHECK(half.rel_bound < 1e-13);

  // a = -1: split off the i = 0 factor
  const Bounded minus_one = pochhammer_infinite(-1.0, q);
  const Bounded minus_half = pochhammer_infinite(-0.5, q);
  CHECK(minus_one.value == doctest::Approx(2.0 * minus_half.value).epsilon(1e-14));
}

TEST_CASE("infinite pochhammer reports non-convergence") {
  TruncationPolicy pol;
  pol.max_terms = 5;
  CHECK_THROWS_AS(pochhammer_infinite(0.5, QParam(0.99), pol), TruncationNotConverged);
  TruncationPolicy bad;
  bad.eps = 0.0;
  CHECK_THROWS_AS(pochhammer_infinite(0.5, QParam(0.5), bad), DomainError);
}

TEST_CASE("log helpers agree with direct products") {
  const QParam q(0.7);
  for (double x : {-3.5, -1.0, 0.0, 0.25, 4.0}) {
    double prod = 1.0;
    for (int i = 0; i < 6; ++i) prod *= 1.0 + std::pow(0.7, x + i);
    CHECK(log_neg_qpow_finite(x, q, 6) == doctest::Approx(std::log(prod)).epsilon(1e-13));
    double inf = 1.0;
    for (int i = 0; i < 400; ++i) inf *= 1.0 + std::pow(0.7, x + i);
    CHECK(log_neg_qpow_infinite(x, q) == doctest::Approx(std::log(inf)).epsilon(1e-13));
    CHECK(log1p_qpow(x, q) == doctest::Approx(std::log1p(std::pow(0.7, x))).epsilon(1e-14));
  }
  // very negative exponent stays finite
  CHECK(std::isfinite(log1p_qpow(-5000.0, q)));
  CHECK(log_qq_pochhammer(q, 0) == 0.0);
  CHECK(log_qq_pochhammer(q, 3) == doctest::Approx(std::log((1 - 0.7) * (1 - 0.49) * (1 - 0.343))));
}

TEST_CASE("qbinomial values") {
  CHECK(qbinomial(5, 0, QParam(0.7)) == doctest::Approx(1.0));
  CHECK(qbinomial(2, 1, QParam(0.3)) == doctest::Approx(1.3));
  // partitions into at most 2 parts each at most 2, weighted by size
  double oracle = 0.0;
  for (int s = 0; s <= 4; ++s) oracle += static_cast<double>(count_bounded(s, 2, 2)) * std::pow(0.5, s);
  CHECK(qbinomial(4, 2, QParam(0.5)) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(qbinomial(4, 5, QParam(0.5)) == 0.0);
  CHECK(qbinomial(4, -1, QParam(0.5)) == 0.0);
}

TEST_CASE("exact qbinomial polynomials") {
  CHECK(qbinomial_poly(4, 4) == IntPoly::constant(1));
  CHECK(qbinomial_poly(3, 1) == IntPoly({1, 1, 1}));
  const IntPoly p = qbinomial_poly(6, 3);
  CHECK(p.degree() == 9);
  for (int s = 0; s <= 9; ++s) CHECK(p.coeff(static_cast<std::size_t>(s)) == count_bounded(s, 3, 3));
  CHECK(p.evaluate(0.5) == doctest::Approx(qbinomial(6, 3, QParam(0.5))).epsilon(1e-14));
}

TEST_CASE("IntPoly arithmetic") {
  const IntPoly a({1, 2});
  const IntPoly b({0, 1, 1});
  CHECK((a * b) == IntPoly({0, 1, 3, 2}));
  CHECK((a + b) == IntPoly({1, 3, 1}));
  CHECK((a - a).is_zero());
  CHECK((a * b).divide_exact(b) == a);
  CHECK_THROWS_AS(IntPoly({1, 0, 1}).divide_exact(IntPoly({1, 1})), DomainError);
  CHECK(IntPoly::monomial(3, 2).to_string() == "2*q^3");
}

TEST_CASE("q-Pascal") {
  CHECK(q_pascal_check(1, 0));
  CHECK(q_pascal_check(4, 2));
  CHECK(q_pascal_check(10, 5));
}

TEST_CASE("pochhammer inversion") {
  const auto s0 = pochhammer_inversion(0, QParam(0.5));
  CHECK(s0.lhs == 1.0);
  CHECK(s0.rhs == 1.0);
  const auto s1 = pochhammer_inversion(1, QParam(0.5));
  CHECK(s1.lhs == doctest::Approx(-1.0));
  CHECK(s1.rhs == doctest::Approx(-1.0));
  const auto s5 = pochhammer_inversion(5, QParam(0.9));
  CHECK(rel_deviation(s5.lhs, s5.rhs) < 1e-12);
}

TEST_CASE("shifted pochhammer ratio") {
  const auto a = shifted_pochhammer_ratio(0.0, 2, 2, 3, 0, QParam(0.5));
  CHECK(rel_deviation(a.lhs, a.rhs) < 1e-10);
  const auto b = shifted_pochhammer_ratio(1.5, 3, 3, 4, -2, QParam(0.9));
  CHECK(rel_deviation(b.lhs, b.rhs) < 1e-9);
  const auto e = shifted_pochhammer_ratio(0.0, 2, 2, 1, 0, QParam(0.5));
  CHECK(rel_deviation(e.lhs, e.rhs) < 1e-12);
}

TEST_CASE("Jacobi triple product") {
  for (auto [z, qv] : {std::pair{1.0, 0.5}, std::pair{2.0, 0.3}, std::pair{0.7, 0.9}}) {
    const auto s = jacobi_triple_product(z, QParam(qv));
    CHECK(rel_deviation(s.lhs, s.rhs) <= 1e-10 + s.lhs_bound + s.rhs_bound);
  }
  CHECK_THROWS_AS(jacobi_triple_product(0.0, QParam(0.5)), DomainError);
}
