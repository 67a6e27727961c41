#include "asep/qseries.hpp"

#include "asep/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace asep {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2.0;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

QParam::QParam(double q) : q_(q), log_q_(0.0) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("q must lie strictly inside (0, 1), got " + std::to_string(q));
  }
  log_q_ = std::log(q);
}

double QParam::pow(double x) const { return std::exp(x * log_q_); }

void TruncationPolicy::validate() const {
  require(eps > 0.0, "truncation eps must be positive");
  require(max_terms >= 1, "truncation max_terms must be at least 1");
}

double rel_deviation(double a, double b) noexcept {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

bool rel_close(double a, double b, double rel_tol) noexcept {
  return rel_deviation(a, b) <= rel_tol;
}

double pochhammer_finite(double a, QParam q, int n) {
  require(n >= 0, "pochhammer length must be nonnegative");
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= 1.0 - a * std::pow(q.value(), i);
  return prod;
}

Bounded pochhammer_infinite(double a, QParam q, const TruncationPolicy& pol) {
  pol.validate();
  if (a == 0.0) return {1.0, 0.0};

  double prod = 1.0;
  double rounding = 0.0;
  int i = 0;
  for (;; ++i) {
    const double t = a * std::pow(q.value(), i);
    if (std::fabs(t) < pol.eps) break;
    if (i >= pol.max_terms) {
      throw TruncationNotConverged("(a;q)_inf did not reach eps within max_terms factors");
    }
    const double f = 1.0 - t;
    if (f == 0.0) return {0.0, 0.0};
    prod *= f;
    rounding += 2.0 * kUnit * (1.0 + std::fabs(t) / std::fabs(f));
  }
  // Remaining factors satisfy |a q^i| < eps < 1, so
  // |log prod_{i>=K}(1 - a q^i)| <= S / (1 - |a q^K|) with S the geometric tail.
  const double head = std::fabs(a) * std::pow(q.value(), i);
  const double tail = head / (1.0 - q.value());
  const double tail_rel = std::expm1(tail / (1.0 - head));
  return {prod, tail_rel + rounding};
}

double log_neg_pochhammer_finite(double b, QParam q, int n) {
  require(b >= 0.0, "log (-b;q)_n requires b >= 0");
  require(n >= 0, "pochhammer length must be nonnegative");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::log1p(b * std::pow(q.value(), i));
  return sum;
}

Bounded log_neg_pochhammer_infinite(double b, QParam q, const TruncationPolicy& pol) {
  pol.validate();
  require(b >= 0.0, "log (-b;q)_inf requires b >= 0");
  if (b == 0.0) return {0.0, 0.0};
  double sum = 0.0;
  int i = 0;
  for (;; ++i) {
    const double t = b * std::pow(q.value(), i);
    if (t < pol.eps) break;
    if (i >= pol.max_terms) {
      throw TruncationNotConverged("(-b;q)_inf did not reach eps within max_terms factors");
    }
    sum += std::log1p(t);
  }
  const double tail = b * std::pow(q.value(), i) / (1.0 - q.value());
  return {sum, tail + 2.0 * kUnit * (i + 1) * std::max(1.0, std::fabs(sum))};
}

double log1p_qpow(double y, QParam q) {
  const double t = y * q.log();
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double log_neg_qpow_finite(double x, QParam q, long n) {
  require(n >= 0, "pochhammer length must be nonnegative");
  double sum = 0.0;
  for (long i = 0; i < n; ++i) sum += log1p_qpow(x + static_cast<double>(i), q);
  return sum;
}

double log_neg_qpow_infinite(double x, QParam q, const TruncationPolicy& pol) {
  pol.validate();
  const double log_eps = std::log(pol.eps);
  double sum = 0.0;
  for (long i = 0;; ++i) {
    const double y = x + static_cast<double>(i);
    if (y * q.log() < log_eps) break;
    if (i >= pol.max_terms) throw TruncationNotConverged("(-q^x;q)_inf did not reach eps within max_terms factors");
    sum += log1p_qpow(y, q);
  }
  return sum;
}

double log_qq_pochhammer(QParam q, int n) {
  require(n >= 0, "pochhammer length must be nonnegative");
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) sum += std::log1p(-std::pow(q.value(), i));
  return sum;
}

double qbinomial(int m, int k, QParam q) {
  if (m < 0 || k < 0 || k > m) return 0.0;
  k = std::min(k, m - k);
  double value = 1.0;
  for (int i = 0; i < k; ++i) {
    value *= (1.0 - std::pow(q.value(), m - i)) / (1.0 - std::pow(q.value(), i + 1));
  }
  return value;
}

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(std::size_t power, const BigInt& c) {
  std::vector<BigInt> v(power + 1);
  v[power] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t power) const {
  return power < coeffs_.size() ? coeffs_[power] : BigInt(0);
}

IntPoly IntPoly::shifted(std::size_t power) const {
  if (is_zero()) return {};
  std::vector<BigInt> v(power, BigInt(0));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::divide_exact(const IntPoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  if (is_zero()) return {};
  std::vector<BigInt> rem = coeffs_;
  const std::size_t dd = divisor.coeffs_.size() - 1;
  if (rem.size() - 1 < dd) throw DomainError("inexact polynomial division");
  std::vector<BigInt> quot(rem.size() - dd);
  const BigInt& lead = divisor.coeffs_.back();
  for (std::size_t top = rem.size(); top-- > dd;) {
    if (rem[top] == 0) continue;
    if (rem[top] % lead != 0) throw DomainError("inexact polynomial division");
    const BigInt factor = rem[top] / lead;
    quot[top - dd] = factor;
    for (std::size_t j = 0; j <= dd; ++j) rem[top - dd + j] -= factor * divisor.coeffs_[j];
  }
  for (const auto& r : rem) {
    if (r != 0) throw DomainError("inexact polynomial division");
  }
  return IntPoly(std::move(quot));
}

double IntPoly::evaluate(double q) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * q + it->convert_to<double>();
  }
  return acc;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[i];
    if (i > 0) os << "*q^" << i;
  }
  return os.str();
}

IntPoly qbinomial_poly(int m, int k) {
  if (m < 0 || k < 0 || k > m) {
    throw DomainError("qbinomial_poly requires 0 <= k <= m");
  }
  const IntPoly one = IntPoly::constant(1);
  IntPoly acc = one;
  // After step i the accumulator is [m, i+1]_q, so every division is exact.
  for (int i = 0; i < k; ++i) {
    acc = acc * (one - IntPoly::monomial(static_cast<std::size_t>(m - i)));
    acc = acc.divide_exact(one - IntPoly::monomial(static_cast<std::size_t>(i + 1)));
  }
  return acc;
}

bool q_pascal_check(int m, int k) {
  if (m < 1 || k < 0 || k > m) throw DomainError("q_pascal_check requires m >= 1, 0 <= k <= m");
  const auto poly_or_zero = [](int mm, int kk) {
    return (kk < 0 || kk > mm) ? IntPoly{} : qbinomial_poly(mm, kk);
  };
  const IntPoly rhs =
      poly_or_zero(m - 1, k).shifted(static_cast<std::size_t>(k)) + poly_or_zero(m - 1, k - 1);
  return qbinomial_poly(m, k) == rhs;
}

IdentitySides pochhammer_inversion(int k, QParam q) {
  require(k >= 0, "pochhammer_inversion requires k >= 0");
  IdentitySides s;
  s.lhs = pochhammer_finite(std::pow(q.value(), -k), q, k);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  // (q;q)_k / q^{k(k+1)/2} evaluated as a product of (q^{-i} - 1) keeps the
  // magnitude representable when q^{k(k+1)/2} underflows.
  double rhs = 1.0;
  for (int i = 1; i <= k; ++i) rhs *= (1.0 - std::pow(q.value(), i)) / std::pow(q.value(), i);
  s.rhs = rhs / sign;
  return s;
}

IdentitySides shifted_pochhammer_ratio(double c, int d, int j, int m_j, int m_prev, QParam q,
                                       const TruncationPolicy& pol) {
  require(d >= 2 && j >= 2 && j <= d, "shifted_pochhammer_ratio requires 2 <= j <= d");
  require(m_prev < m_j, "shifted_pochhammer_ratio requires m_prev < m_j");
  const int gap = m_j - m_prev - 1;
  const double base = c + d - j - m_j;

  IdentitySides s;
  const double numer = pochhammer_finite(-q.pow(base + 2.0), q, gap);
  const Bounded denom = pochhammer_infinite(-q.pow(base), q, pol);
  s.lhs = numer / denom.value;
  s.lhs_bound = denom.rel_bound;

  const Bounded tail = pochhammer_infinite(-q.pow(c + d - (j - 1) - m_prev), q, pol);
  s.rhs = 1.0 / ((1.0 + q.pow(base)) * (1.0 + q.pow(base + 1.0)) * tail.value);
  s.rhs_bound = tail.rel_bound;
  return s;
}

IdentitySides jacobi_triple_product(double z, QParam q, const TruncationPolicy& pol) {
  pol.validate();
  require(z != 0.0, "jacobi_triple_product requires z != 0");

  const double log_abs_z = std::log(std::fabs(z));
  const auto log_mag = [&](long l) {
    return 0.5 * static_cast<double>(l) * static_cast<double>(l + 1) * q.log() +
           static_cast<double>(l) * log_abs_z;
  };
  const auto term = [&](long l) {
    const double mag = std::exp(log_mag(l));
    return (z < 0.0 && (l % 2 != 0)) ? -mag : mag;
  };

  // The log-magnitude is a downward parabola in l with vertex at -log|z|/log q - 1/2.
  const long peak = std::lround(-log_abs_z / q.log() - 0.5);
  const double peak_log = log_mag(peak);
  const double cutoff = std::log(pol.eps) + peak_log;

  double sum = term(peak);
  double abs_sum = std::fabs(sum);
  long n_terms = 1;
  long hi = peak + 1;
  for (; log_mag(hi) >= cutoff; ++hi, ++n_terms) {
    if (n_terms >= pol.max_terms) throw TruncationNotConverged("theta sum exceeded max_terms");
    const double t = term(hi);
    sum += t;
    abs_sum += std::fabs(t);
  }
  long lo = peak - 1;
  for (; log_mag(lo) >= cutoff; --lo, ++n_terms) {
    if (n_terms >= pol.max_terms) throw TruncationNotConverged("theta sum exceeded max_terms");
    const double t = term(lo);
    sum += t;
    abs_sum += std::fabs(t);
  }
  // Consecutive-term ratios past the cut are q^{l+1}|z| (upward) and q^{-l}/|z|
  // (downward); both shrink further out, so each tail is dominated by a
  // geometric series with the first ratio.
  const double up_ratio = std::exp((hi + 1) * q.log() + log_abs_z);
  const double down_ratio = std::exp(-lo * q.log() - log_abs_z);
  const auto geometric_tail = [](double first, double ratio) {
    return ratio < 1.0 ? first / (1.0 - ratio) : std::numeric_limits<double>::infinity();
  };
  const double up_tail = geometric_tail(std::exp(log_mag(hi)), up_ratio);
  const double down_tail = geometric_tail(std::exp(log_mag(lo)), down_ratio);

  IdentitySides s;
  s.lhs = sum;
  s.lhs_bound = (up_tail + down_tail + 2.0 * kUnit * n_terms * abs_sum) /
                std::max(std::fabs(sum), 1e-300);

  const Bounded a = pochhammer_infinite(q.value(), q, pol);
  const Bounded b = pochhammer_infinite(-q.value() * z, q, pol);
  const Bounded cfac = pochhammer_infinite(-1.0 / z, q, pol);
  s.rhs = a.value * b.value * cfac.value;
  s.rhs_bound = (1.0 + a.rel_bound) * (1.0 + b.rel_bound) * (1.0 + cfac.rel_bound) - 1.0;
  return s;
}

}  // namespace asep
