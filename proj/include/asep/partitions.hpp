#pragma once

// Exact integer-partition engine. Counting is done by dynamic programming
// over arbitrary-precision integers; explicit enumeration is only used as an
// oracle and is capped at n = 60.

#include "asep/qseries.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace asep {

/// Weakly decreasing positive parts; the empty partition is the partition of 0.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  int size() const noexcept;
  /// lambda_i with 1-based index; 0 beyond the last part.
  int part(std::size_t i) const noexcept;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Durfee rectangle of side lengths (n_offset + k) x k plus the two leftover
/// partitions to its right and below it.
struct DurfeeDecomposition {
  int n_offset = 0;
  int k = 0;
  Partition right;
  Partition below;

  /// Rebuilds the partition this decomposition came from.
  Partition reassemble() const;
};

/// Truncated power series in q with exact coefficients for q^0..q^N.
class IntSeries {
 public:
  explicit IntSeries(int cutoff);
  IntSeries(int cutoff, std::vector<BigInt> coeffs);

  int cutoff() const noexcept { return cutoff_; }
  const BigInt& operator[](int power) const { return coeffs_.at(static_cast<std::size_t>(power)); }
  BigInt& operator[](int power) { return coeffs_.at(static_cast<std::size_t>(power)); }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  /// Multiplies by q^power, dropping terms past the cutoff.
  IntSeries shifted(int power) const;

  friend IntSeries operator+(const IntSeries& a, const IntSeries& b);
  friend IntSeries operator*(const IntSeries& a, const IntSeries& b);
  friend bool operator==(const IntSeries&, const IntSeries&) = default;

 private:
  int cutoff_;
  std::vector<BigInt> coeffs_;
};

inline constexpr int kMaxEnumeration = 60;

/// All partitions of n in lexicographically decreasing order.
std::vector<Partition> enumerate_partitions(int n);

/// Partitions of n into at most max_parts parts, each at most max_size.
BigInt count_bounded(int n, int max_parts, int max_size);

/// Unique Durfee rectangle decomposition for the given offset.
DurfeeDecomposition durfee_decompose(const Partition& p, int n_offset);

/// Partitions of n into exactly k distinct parts.
BigInt count_distinct_exactly_k(int n, int k);

/// Partitions of n into exactly k distinct parts, each at most m.
BigInt count_distinct_bounded(int n, int k, int m);

/// p(0..N), the coefficients of 1/(q;q)_inf.
IntSeries series_partition_gf(int cutoff);

/// Coefficients of 1/(q;q)_k: partitions with parts at most k (equivalently
/// with at most k parts).
IntSeries series_bounded_parts_gf(int max_part, int cutoff);

/// Reads a window occupancy as the partition of left jumps away from the
/// right-aligned packing of its k particles.
Partition window_state_to_partition(std::span<const std::uint8_t> bits, int k);

}  // namespace asep
