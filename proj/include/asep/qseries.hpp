#pragma once

/**
 * q-series kernel: finite and infinite q-Pochhammer symbols, q-binomial
 * coefficients (floating and exact-integer polynomial), and the small
 * manipulation identities the blocking-measure formulas lean on.
 *
 * All real-valued routines work in double precision. Infinite products are
 * truncated on term magnitude and report a bound on the relative error of
 * the truncated value, so callers can combine bounds when they multiply.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace asep {

using BigInt = boost::multiprecision::cpp_int;

/// Asymmetry parameter, strictly inside (0, 1).
class QParam {
 public:
  explicit QParam(double q);

  double value() const noexcept { return q_; }
  double log() const noexcept { return log_q_; }
  /// q^x for real x.
  double pow(double x) const;

 private:
  double q_;
  double log_q_;
};

struct TruncationPolicy {
  double eps = 1e-17;
  int max_terms = 100000;

  void validate() const;
};

/// A truncated quantity together with a bound on its relative error.
struct Bounded {
  double value = 0.0;
  double rel_bound = 0.0;
};

/// Both sides of an identity together with their relative truncation bounds.
struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_bound = 0.0;
  double rhs_bound = 0.0;
};

/// |a - b| / max(|a|, |b|, 1e-300).
double rel_deviation(double a, double b) noexcept;
bool rel_close(double a, double b, double rel_tol) noexcept;

/// (a; q)_n = prod_{i<n} (1 - a q^i); 1 for n = 0.
double pochhammer_finite(double a, QParam q, int n);

/// (a; q)_inf truncated once |a q^i| < eps. Throws TruncationNotConverged if
/// max_terms factors are consumed first.
Bounded pochhammer_infinite(double a, QParam q, const TruncationPolicy& pol = {});

/// log (-b; q)_n for b >= 0. Overflow-free form used by the closed-form laws.
double log_neg_pochhammer_finite(double b, QParam q, int n);

/// log (-b; q)_inf for b >= 0; rel_bound is an absolute bound on the log.
Bounded log_neg_pochhammer_infinite(double b, QParam q, const TruncationPolicy& pol = {});

/// log(1 + q^y) for real y, without overflow when y is very negative.
double log1p_qpow(double y, QParam q);

/// log (-q^x; q)_n for real x.
double log_neg_qpow_finite(double x, QParam q, long n);

/// log (-q^x; q)_inf for real x, truncated once q^{x+i} < eps.
double log_neg_qpow_infinite(double x, QParam q, const TruncationPolicy& pol = {});

/// log (q; q)_n.
double log_qq_pochhammer(QParam q, int n);

/// [m k]_q for real q; zero when k < 0 or k > m.
double qbinomial(int m, int k, QParam q);

/// Dense polynomial in q with arbitrary-precision integer coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);

  static IntPoly constant(const BigInt& c);
  /// c * q^power.
  static IntPoly monomial(std::size_t power, const BigInt& c = 1);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  BigInt coeff(std::size_t power) const;

  IntPoly shifted(std::size_t power) const;
  /// Exact quotient; throws DomainError when the division leaves a remainder.
  IntPoly divide_exact(const IntPoly& divisor) const;
  double evaluate(double q) const;
  std::string to_string() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Exact [m k]_q built from the product formula by exact polynomial division.
IntPoly qbinomial_poly(int m, int k);

/// [m k] == q^k [m-1 k] + [m-1 k-1] as exact polynomials.
bool q_pascal_check(int m, int k);

/// Both sides of (q^{-k}; q)_k = (q; q)_k / ((-1)^k q^{k(k+1)/2}).
IdentitySides pochhammer_inversion(int k, QParam q);

/// Both sides of
///   (-q^{c+d+2-j-m_j}; q)_{mh} / (-q^{c+d-j-m_j}; q)_inf
///     = 1 / ((1+q^{c+d-j-m_j}) (1+q^{c+d+1-j-m_j}) (-q^{c+d-(j-1)-m_prev}; q)_inf)
/// with mh = m_j - m_prev - 1.
IdentitySides shifted_pochhammer_ratio(double c, int d, int j, int m_j, int m_prev, QParam q,
                                       const TruncationPolicy& pol = {});

/// Sum side sum_l q^{l(l+1)/2} z^l and product side
/// (q;q)_inf (-qz;q)_inf (-1/z;q)_inf of the triple product identity.
IdentitySides jacobi_triple_product(double z, QParam q, const TruncationPolicy& pol = {});

}  // namespace asep
