#pragma once

// Independent reference computations used by the tests. None of these call
// the closed-form laws they are compared against.

#include "asep/blocking.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;

// prod_{i<terms} (1 - a q^i) in exact rational arithmetic.
inline Rational pochhammer_rational(const Rational& a, const Rational& q, int terms) {
  Rational out = 1;
  Rational qi = 1;
  for (int i = 0; i < terms; ++i) {
    out *= 1 - a * qi;
    qi *= q;
  }
  return out;
}

// Occupation probability of site i computed directly from the single-site
// weights q^{-(i-c) z}: weight(1) / (weight(0) + weight(1)).
inline double occupied(int i, double q, double c) {
  const double w1 = std::pow(q, -(i - c));
  if (std::isinf(w1)) return 1.0;
  return w1 / (1.0 + w1);
}

// Law of the number of particles on the sites [first, last] for independent
// Bernoulli sites (Poisson-binomial convolution).
inline std::vector<double> poisson_binomial(int first, int last, double q, double c) {
  std::vector<double> law{1.0};
  for (int i = first; i <= last; ++i) {
    const double p = occupied(i, q, c);
    std::vector<double> next(law.size() + 1, 0.0);
    for (std::size_t k = 0; k < law.size(); ++k) {
      next[k] += law[k] * (1.0 - p);
      next[k + 1] += law[k] * p;
    }
    law.swap(next);
  }
  return law;
}

// Number of sites to include left of m so that the omitted expected
// particle count is below tol.
inline int left_depth(double q, double c, int m, double tol = 1e-17) {
  int L = 0;
  double tail = 0.0;
  do {
    ++L;
    // geometric tail bound of sum_{i < m-L} P(occupied)
    tail = occupied(m - L, q, c) / (1.0 - q);
  } while (tail > tol && L < 20000);
  return L;
}

// Particles at or left of m, by convolution over [m-L, m].
inline std::vector<double> left_particle_law(int m, double q, double c) {
  return poisson_binomial(m - left_depth(q, c, m), m, q, c);
}

// Discrete logistic pmf (1-p) p^{y-mu} / ((1 + p^{y-mu})(1 + p^{y-mu+1})).
inline double discrete_logistic(double y, double p, double mu) {
  const double a = std::pow(p, y - mu);
  return (1.0 - p) * a / ((1.0 + a) * (1.0 + p * a));
}

}  // namespace oracle
