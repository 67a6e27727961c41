#include "asep/partitions.hpp"

#include "asep/error.hpp"

#include <algorithm>
#include <numeric>

namespace asep {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
  }
}

int Partition::size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::part(std::size_t i) const noexcept {
  return (i >= 1 && i <= parts_.size()) ? parts_[i - 1] : 0;
}

Partition DurfeeDecomposition::reassemble() const {
  const int width = n_offset + k;
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(k) + below.length());
  for (int i = 1; i <= k; ++i) parts.push_back(width + right.part(static_cast<std::size_t>(i)));
  for (int v : below.parts()) parts.push_back(v);
  // A zero-width rectangle (n_offset = -k) leaves zero rows that are not parts.
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  return Partition(std::move(parts));
}

// ---------------------------------------------------------------------------
// IntSeries

IntSeries::IntSeries(int cutoff) : cutoff_(cutoff), coeffs_(static_cast<std::size_t>(cutoff) + 1) {
  if (cutoff < 0) throw DomainError("series cutoff must be nonnegative");
}

IntSeries::IntSeries(int cutoff, std::vector<BigInt> coeffs) : IntSeries(cutoff) {
  for (std::size_t i = 0; i < coeffs.size() && i < coeffs_.size(); ++i) coeffs_[i] = std::move(coeffs[i]);
}

IntSeries IntSeries::shifted(int power) const {
  IntSeries out(cutoff_);
  for (int i = 0; i + power <= cutoff_; ++i) {
    if (i + power >= 0) out.coeffs_[static_cast<std::size_t>(i + power)] = coeffs_[static_cast<std::size_t>(i)];
  }
  return out;
}

IntSeries operator+(const IntSeries& a, const IntSeries& b) {
  const int n = std::min(a.cutoff_, b.cutoff_);
  IntSeries out(n);
  for (int i = 0; i <= n; ++i) out[i] = a[i] + b[i];
  return out;
}

IntSeries operator*(const IntSeries& a, const IntSeries& b) {
  const int n = std::min(a.cutoff_, b.cutoff_);
  IntSeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void enumerate_rec(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    enumerate_rec(remaining - part, part, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
  if (n < 0) throw DomainError("cannot enumerate partitions of a negative integer");
  if (n > kMaxEnumeration) throw SizeLimit("enumerate_partitions is capped at n = 60");
  std::vector<Partition> out;
  std::vector<int> current;
  enumerate_rec(n, n, current, out);
  return out;
}

BigInt count_bounded(int n, int max_parts, int max_size) {
  if (n < 0) return 0;
  if (n == 0) return 1;
  if (max_parts <= 0 || max_size <= 0) return 0;
  // ways[p][s]: partitions of s with at most p parts, parts drawn from 1..size.
  // Adding part sizes one at a time keeps both bounds in the table.
  const auto P = static_cast<std::size_t>(max_parts);
  const auto N = static_cast<std::size_t>(n);
  std::vector<std::vector<BigInt>> ways(P + 1, std::vector<BigInt>(N + 1));
  for (std::size_t p = 0; p <= P; ++p) ways[p][0] = 1;
  for (int size = 1; size <= std::min(max_size, n); ++size) {
    const auto sz = static_cast<std::size_t>(size);
    // Ascending p and s lets a part size repeat.
    for (std::size_t p = 1; p <= P; ++p) {
      for (std::size_t s = sz; s <= N; ++s) ways[p][s] += ways[p - 1][s - sz];
    }
  }
  return ways[P][N];
}

DurfeeDecomposition durfee_decompose(const Partition& p, int n_offset) {
  DurfeeDecomposition out;
  out.n_offset = n_offset;
  const int k_min = std::max(-n_offset, 0);

  // With lambda_0 = +inf and lambda_i = 0 past the last part, lambda_k - (n+k)
  // is strictly decreasing in k, so the admissible k is the largest with
  // lambda_k >= n + k.
  int k = k_min;
  while (p.part(static_cast<std::size_t>(k + 1)) >= n_offset + k + 1) ++k;
  if (k > k_min && p.part(static_cast<std::size_t>(k)) < n_offset + k) {
    throw DomainError("durfee_decompose: internal uniqueness violation");
  }
  out.k = k;

  const int width = n_offset + k;
  std::vector<int> right;
  for (int i = 1; i <= k; ++i) {
    const int rest = p.part(static_cast<std::size_t>(i)) - width;
    if (rest > 0) right.push_back(rest);
  }
  std::vector<int> below;
  for (std::size_t i = static_cast<std::size_t>(k) + 1; i <= p.length(); ++i) below.push_back(p.part(i));
  out.right = Partition(std::move(right));
  out.below = Partition(std::move(below));
  return out;
}

BigInt count_distinct_exactly_k(int n, int k) {
  if (n < 0 || k < 0) return 0;
  // d(n, k) = d(n - k, k) + d(n - k, k - 1): subtract one from every part and
  // drop the part that becomes zero, if any.
  const auto N = static_cast<std::size_t>(n);
  const auto K = static_cast<std::size_t>(k);
  std::vector<std::vector<BigInt>> d(N + 1, std::vector<BigInt>(K + 1));
  d[0][0] = 1;
  for (std::size_t s = 1; s <= N; ++s) {
    for (std::size_t j = 1; j <= K && j <= s; ++j) {
      d[s][j] = d[s - j][j] + d[s - j][j - 1];
    }
  }
  return d[N][K];
}

BigInt count_distinct_bounded(int n, int k, int m) {
  if (n < 0 || k < 0) return 0;
  const auto N = static_cast<std::size_t>(n);
  const auto K = static_cast<std::size_t>(k);
  // 0/1 knapsack over the allowed part sizes 1..m, tracking the part count.
  std::vector<std::vector<BigInt>> ways(K + 1, std::vector<BigInt>(N + 1));
  ways[0][0] = 1;
  for (int part = 1; part <= m; ++part) {
    const auto sz = static_cast<std::size_t>(part);
    for (std::size_t j = K; j >= 1; --j) {
      for (std::size_t s = N; s >= sz; --s) {
        ways[j][s] += ways[j - 1][s - sz];
        if (s == sz) break;
      }
    }
  }
  return ways[K][N];
}

IntSeries series_partition_gf(int cutoff) { return series_bounded_parts_gf(cutoff, cutoff); }

IntSeries series_bounded_parts_gf(int max_part, int cutoff) {
  IntSeries out(cutoff);
  out[0] = 1;
  for (int part = 1; part <= std::min(max_part, cutoff); ++part) {
    for (int s = part; s <= cutoff; ++s) out[s] += out[s - part];
  }
  return out;
}

Partition window_state_to_partition(std::span<const std::uint8_t> bits, int k) {
  const int width = static_cast<int>(bits.size());
  int count = 0;
  for (auto b : bits) {
    if (b > 1) throw DomainError("window occupancy must be 0 or 1");
    count += b;
  }
  if (count != k) throw DomainError("window holds a different number of particles than k");

  // The j-th particle from the right belongs at width-1-j in the packed state.
  std::vector<int> parts;
  int j = 0;
  for (int site = width - 1; site >= 0; --site) {
    if (bits[static_cast<std::size_t>(site)] == 0) continue;
    const int jumps = (width - 1 - j) - site;
    if (jumps > 0) parts.push_back(jumps);
    ++j;
  }
  // Particles further right have been displaced no more than those to their
  // left, so reading right-to-left already gives weakly increasing jumps.
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

}  // namespace asep
