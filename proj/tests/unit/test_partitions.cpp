#include "asep/error.hpp"
#include "asep/partitions.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace asep;

namespace {

const Partition kSample({8, 8, 7, 3, 2, 1, 1});

}  // namespace

TEST_CASE("Partition validation") {
  CHECK_THROWS_AS(Partition({1, 2}), DomainError);
  CHECK_THROWS_AS(Partition({3, 0}), DomainError);
  CHECK(kSample.size() == 30);
  CHECK(kSample.part(1) == 8);
  CHECK(kSample.part(8) == 0);
}

TEST_CASE("enumeration") {
  CHECK(enumerate_partitions(0) == std::vector<Partition>{Partition()});
  const auto four = enumerate_partitions(4);
  const std::vector<Partition> want{Partition({4}), Partition({3, 1}), Partition({2, 2}), Partition({2, 1, 1}),
                                    Partition({1, 1, 1, 1})};
  CHECK(four == want);
  const auto thirty = enumerate_partitions(30);
  CHECK(thirty.size() == 5604);
  CHECK(std::find(thirty.begin(), thirty.end(), kSample) != thirty.end());
  CHECK_THROWS_AS(enumerate_partitions(61), SizeLimit);
  CHECK_THROWS_AS(enumerate_partitions(-1), DomainError);
}

TEST_CASE("bounded counts match enumeration") {
  CHECK(count_bounded(0, 3, 3) == 1);
  CHECK(count_bounded(5, 0, 4) == 0);
  CHECK(count_bounded(4, 2, 2) == 1);
  for (int n = 0; n <= 14; ++n) {
    const auto all = enumerate_partitions(n);
    for (int parts = 0; parts <= 5; ++parts) {
      for (int size = 0; size <= 5; ++size) {
        const auto want = std::count_if(all.begin(), all.end(), [&](const Partition& p) {
          return static_cast<int>(p.length()) <= parts && p.part(1) <= size;
        });
        CHECK(count_bounded(n, parts, size) == want);
      }
    }
  }
}

TEST_CASE("distinct part counts match enumeration") {
  CHECK(count_distinct_exactly_k(0, 0) == 1);
  CHECK(count_distinct_exactly_k(3, 2) == 1);
  CHECK(count_distinct_bounded(5, 2, 4) == 2);
  CHECK(count_distinct_bounded(7, 0, 4) == 0);
  CHECK(count_distinct_bounded(0, 0, 4) == 1);
  // staircase-topped maximal case m k - k(k-1)/2
  CHECK(count_distinct_bounded(6 * 3 - 3, 3, 6) == 1);
  for (int n = 0; n <= 20; ++n) {
    const auto all = enumerate_partitions(n);
    for (int k = 0; k <= 6; ++k) {
      auto distinct = [](const Partition& p) {
        return std::adjacent_find(p.parts().begin(), p.parts().end()) == p.parts().end();
      };
      const auto exact = std::count_if(all.begin(), all.end(), [&](const Partition& p) {
        return static_cast<int>(p.length()) == k && distinct(p);
      });
      CHECK(count_distinct_exactly_k(n, k) == exact);
      const auto bounded = std::count_if(all.begin(), all.end(), [&](const Partition& p) {
        return static_cast<int>(p.length()) == k && distinct(p) && p.part(1) <= 7;
      });
      CHECK(count_distinct_bounded(n, k, 7) == bounded);
    }
  }
}

TEST_CASE("Durfee decompositions of a sample partition") {
  const auto d0 = durfee_decompose(kSample, 0);
  CHECK(d0.k == 3);
  CHECK(d0.right == Partition({5, 5, 4}));
  CHECK(d0.below == Partition({3, 2, 1, 1}));

  const auto d2 = durfee_decompose(kSample, 2);
  CHECK(d2.k == 3);
  CHECK(d2.right == Partition({3, 3, 2}));
  CHECK(d2.below == Partition({3, 2, 1, 1}));

  const auto dm3 = durfee_decompose(kSample, -3);
  CHECK(dm3.k == 5);
  CHECK(dm3.right == Partition({6, 6, 5, 1}));
  CHECK(dm3.below == Partition({1, 1}));
}

TEST_CASE("Durfee reassembly and uniqueness") {
  for (int n = -4; n <= 4; ++n) {
    for (int s = 0; s <= 25; ++s) {
      std::set<std::tuple<int, Partition, Partition>> seen;
      for (const auto& p : enumerate_partitions(s)) {
        const auto dec = durfee_decompose(p, n);
        CHECK(dec.reassemble() == p);
        CHECK(dec.k >= std::max(-n, 0));
        CHECK(static_cast<int>(dec.right.length()) <= dec.k);
        CHECK(dec.below.part(1) <= n + dec.k);
        CHECK(seen.emplace(dec.k, dec.right, dec.below).second);
      }
    }
  }
}

TEST_CASE("partition generating function") {
  const IntSeries p = series_partition_gf(40);
  CHECK(p[0] == 1);
  CHECK(p[4] == 5);
  CHECK(p[30] == 5604);
  CHECK(p[30] == static_cast<long>(enumerate_partitions(30).size()));
  CHECK(p[40] == 37338);
}

TEST_CASE("rectangle sums reproduce p(N)") {
  const int N = 40;
  const IntSeries p = series_partition_gf(N);
  for (int n = -3; n <= 3; ++n) {
    IntSeries total(N);
    for (int k = std::max(-n, 0); k * (n + k) <= N; ++k) {
      total = total + (series_bounded_parts_gf(n + k, N) * series_bounded_parts_gf(k, N)).shifted(k * (n + k));
    }
    CHECK(total == p);
  }
}

TEST_CASE("window states as partitions") {
  const std::vector<std::uint8_t> packed{0, 0, 1, 1};
  CHECK(window_state_to_partition(packed, 2) == Partition());
  const std::vector<std::uint8_t> left{1, 0, 0};
  CHECK(window_state_to_partition(left, 1) == Partition({2}));
  const std::vector<std::uint8_t> spread{1, 0, 1, 0};
  CHECK(window_state_to_partition(spread, 2) == Partition({2, 1}));
  CHECK_THROWS_AS(window_state_to_partition(spread, 3), DomainError);
}

TEST_CASE("window bijection gives the q-binomial") {
  for (int width = 0; width <= 10; ++width) {
    for (int k = 0; k <= width; ++k) {
      std::vector<BigInt> coeffs(static_cast<std::size_t>(k * (width - k) + 1));
      for (unsigned mask = 0; mask < (1u << width); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) bits[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
        const Partition p = window_state_to_partition(bits, k);
        CHECK(static_cast<int>(p.length()) <= k);
        CHECK(p.part(1) <= width - k);
        ++coeffs[static_cast<std::size_t>(p.size())];
      }
      CHECK(IntPoly(coeffs) == qbinomial_poly(width, k));
    }
  }
}
