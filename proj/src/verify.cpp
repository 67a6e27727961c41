#include "asep/verify.hpp"

#include "asep/error.hpp"
#include "asep/partitions.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

namespace asep {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2.0;

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

// Sums a series whose successive term ratios shrink in magnitude once they
// drop below one. `ratio(k)` gives t_{k+1}/t_k. Returns the sum with a
// relative bound covering the omitted tail and accumulated rounding.
template <class Ratio>
Bounded sum_decaying_series(double first, int k0, Ratio ratio, const TruncationPolicy& pol) {
  double term = first;
  double sum = first;
  double abs_sum = std::fabs(first);
  for (int k = k0;; ++k) {
    if (k - k0 >= pol.max_terms) throw TruncationNotConverged("series did not converge within max_terms");
    const double r = ratio(k);
    if (std::fabs(r) < 0.5 && std::fabs(term) <= pol.eps * std::fabs(sum)) {
      const double tail = std::fabs(term) * std::fabs(r) / (1.0 - std::fabs(r));
      const double rounding = 4.0 * kUnit * (k - k0 + 2) * abs_sum;
      const double denom = std::fabs(sum) > 0.0 ? std::fabs(sum) : std::numeric_limits<double>::min();
      return {sum, (tail + rounding) / denom};
    }
    term *= r;
    sum += term;
    abs_sum += std::fabs(term);
  }
}

IntSeries rectangle_series(int n_offset, int k, int cutoff) {
  // q^{k(n+k)} / ((q;q)_{n+k} (q;q)_k)
  const int shift = k * (n_offset + k);
  IntSeries out(cutoff);
  if (shift > cutoff) return out;
  return (series_bounded_parts_gf(n_offset + k, cutoff) * series_bounded_parts_gf(k, cutoff)).shifted(shift);
}

}  // namespace

IdentityReport make_report(std::string identity, std::string parameters, const IdentitySides& sides, double tol) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.parameters = std::move(parameters);
  r.lhs = sides.lhs;
  r.rhs = sides.rhs;
  r.lhs_bound = sides.lhs_bound;
  r.rhs_bound = sides.rhs_bound;
  r.abs_deviation = std::fabs(sides.lhs - sides.rhs);
  r.rel_deviation = rel_deviation(sides.lhs, sides.rhs);
  r.tolerance = tol;
  r.pass = r.rel_deviation <= tol + r.lhs_bound + r.rhs_bound;
  return r;
}

IdentityReport verify_durfee(QParam q, int n_offset, const TruncationPolicy& pol, double tol) {
  pol.validate();
  IdentitySides s;
  const Bounded qq = pochhammer_infinite(q.value(), q, pol);
  s.lhs = 1.0 / qq.value;
  s.lhs_bound = qq.rel_bound / std::max(1.0 - qq.rel_bound, 0.5) + 2.0 * kUnit;

  const int k0 = std::max(-n_offset, 0);
  const double first =
      std::exp(k0 * (n_offset + k0) * q.log() - log_qq_pochhammer(q, n_offset + k0) - log_qq_pochhammer(q, k0));
  const auto ratio = [&](int k) {
    const double qv = q.value();
    return std::pow(qv, n_offset + 2 * k + 1) / ((1.0 - std::pow(qv, n_offset + k + 1)) * (1.0 - std::pow(qv, k + 1)));
  };
  const Bounded rhs = sum_decaying_series(first, k0, ratio, pol);
  s.rhs = rhs.value;
  s.rhs_bound = rhs.rel_bound;
  return make_report("durfee", params({{"q", q.value()}, {"n", n_offset}}), s, tol);
}

IdentityReport verify_euler(QParam q, double z, const TruncationPolicy& pol, double tol) {
  pol.validate();
  IdentitySides s;
  const auto ratio = [&](int k) { return std::pow(q.value(), k) * z / (1.0 - std::pow(q.value(), k + 1)); };
  const Bounded lhs = sum_decaying_series(1.0, 0, ratio, pol);
  s.lhs = lhs.value;
  s.lhs_bound = lhs.rel_bound;
  const Bounded rhs = pochhammer_infinite(-z, q, pol);
  s.rhs = rhs.value;
  s.rhs_bound = rhs.rel_bound;
  return make_report("euler", params({{"q", q.value()}, {"z", z}}), s, tol);
}

IdentityReport verify_qbinomial(QParam q, double z, int m, double tol) {
  if (m < 0) throw DomainError("q-binomial identity needs m >= 0");
  IdentitySides s;
  double abs_sum = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double t = std::pow(q.value(), 0.5 * k * (k - 1)) * std::pow(z, k) * qbinomial(m, k, q);
    s.lhs += t;
    abs_sum += std::fabs(t);
  }
  s.rhs = pochhammer_finite(-z, q, m);
  double abs_prod = 1.0;
  for (int i = 0; i < m; ++i) abs_prod *= 1.0 + std::fabs(z) * std::pow(q.value(), i);
  const double tiny = std::numeric_limits<double>::min();
  s.lhs_bound = 4.0 * kUnit * (2 * m + 4) * abs_sum / std::max(std::fabs(s.lhs), tiny);
  s.rhs_bound = 4.0 * kUnit * (m + 2) * abs_prod / std::max(std::fabs(s.rhs), tiny);
  return make_report("qbinomial", params({{"q", q.value()}, {"z", z}, {"m", m}}), s, tol);
}

IdentityReport verify_jacobi(QParam q, double z, const TruncationPolicy& pol, double tol) {
  return make_report("jacobi", params({{"q", q.value()}, {"z", z}}), jacobi_triple_product(z, q, pol), tol);
}

bool verify_durfee_exact(int N, int n_offset) {
  if (N < 0) throw DomainError("N must be nonnegative");
  const int k_min = std::max(-n_offset, 0);
  // Rectangle-sum coefficients per k.
  std::vector<IntSeries> per_k;
  for (int k = k_min; k * (n_offset + k) <= N; ++k) per_k.push_back(rectangle_series(n_offset, k, N));
  const IntSeries p = series_partition_gf(N);

  for (int s = 0; s <= N; ++s) {
    const auto parts = enumerate_partitions(s);
    if (BigInt(parts.size()) != p[s]) return false;
    std::vector<BigInt> by_k(per_k.size());
    std::set<std::tuple<int, Partition, Partition>> seen;
    for (const auto& lambda : parts) {
      const DurfeeDecomposition dec = durfee_decompose(lambda, n_offset);
      const int k = dec.k;
      const int width = n_offset + k;
      if (k < k_min) return false;
      if (dec.reassemble() != lambda) return false;
      if (static_cast<int>(dec.right.length()) > k) return false;
      if (dec.below.part(1) > width) return false;
      if (k > 0 && lambda.part(static_cast<std::size_t>(k)) < width) return false;
      if (lambda.part(static_cast<std::size_t>(k) + 1) > width) return false;
      if (!seen.emplace(k, dec.right, dec.below).second) return false;
      const auto idx = static_cast<std::size_t>(k - k_min);
      if (idx >= by_k.size()) return false;
      ++by_k[idx];
    }
    BigInt total = 0;
    for (std::size_t i = 0; i < per_k.size(); ++i) {
      if (by_k[i] != per_k[i][s]) return false;
      total += per_k[i][s];
    }
    if (total != p[s]) return false;
  }
  return true;
}

bool verify_euler_exact(int N, int K) {
  if (N < 0 || K < 0) throw DomainError("N and K must be nonnegative");
  const auto NN = static_cast<std::size_t>(N);
  const auto KK = static_cast<std::size_t>(K);
  // prod_{i=0..N} (1 + z q^i), truncated at q^N z^K.
  std::vector<std::vector<BigInt>> prod(KK + 1, std::vector<BigInt>(NN + 1));
  prod[0][0] = 1;
  for (std::size_t i = 0; i <= NN; ++i) {
    for (std::size_t k = KK; k >= 1; --k) {
      for (std::size_t n = NN; n + 1 > i; --n) {
        prod[k][n] += prod[k - 1][n - i];
        if (n == 0) break;
      }
    }
  }
  for (int k = 0; k <= K; ++k) {
    const IntSeries sum_side = series_bounded_parts_gf(k, N).shifted(k * (k - 1) / 2);
    for (int n = 0; n <= N; ++n) {
      const BigInt& via_prod = prod[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
      if (sum_side[n] != via_prod) return false;
      // Distinct nonnegative parts shift to distinct positive parts of n + k.
      if (count_distinct_exactly_k(n + k, k) != via_prod) return false;
    }
  }
  return true;
}

bool verify_qbinomial_exact(int m) {
  if (m < 0) throw DomainError("m must be nonnegative");
  const int top = m * (m - 1) / 2;
  const auto M = static_cast<std::size_t>(m);
  const auto S = static_cast<std::size_t>(std::max(top, 0));
  std::vector<std::vector<BigInt>> prod(M + 1, std::vector<BigInt>(S + 1));
  prod[0][0] = 1;
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t k = M; k >= 1; --k) {
      for (std::size_t s = S; s + 1 > i; --s) {
        prod[k][s] += prod[k - 1][s - i];
        if (s == 0) break;
      }
    }
  }
  for (int k = 0; k <= m; ++k) {
    const IntPoly binom = qbinomial_poly(m, k);
    const int shift = k * (k - 1) / 2;
    for (int s = 0; s <= top; ++s) {
      const BigInt sum_side = s >= shift ? binom.coeff(static_cast<std::size_t>(s - shift)) : BigInt(0);
      const BigInt& via_prod = prod[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
      if (sum_side != via_prod) return false;
      if (count_distinct_bounded(s + k, k, m) != via_prod) return false;
    }
  }
  return true;
}

}  // namespace asep
