#pragma once

#include <cstdint>
#include <vector>

namespace asep {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins_used = 0;
};

/// Goodness of fit of observed counts against model probabilities for the
/// same bins. Mass not covered by the bins (1 - sum of probs) forms an extra
/// bin with zero observations unless `overflow_count` says otherwise. Bins
/// with expected count below `min_expected` are pooled together.
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs,
                               std::uint64_t overflow_count = 0, double min_expected = 5.0);

/// Two-sample homogeneity test on a shared set of bins; sparse bins pooled.
ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                       double min_expected = 5.0);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double statistic, int dof);

}  // namespace asep
