#include "asep/stats.hpp"

#include "asep/error.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <numeric>

namespace asep {

double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, std::max(statistic, 0.0)));
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs,
                               std::uint64_t overflow_count, double min_expected) {
  if (observed.size() != probs.size()) throw DomainError("observed and probs must have equal length");
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}) + overflow_count);
  if (total <= 0.0) throw DomainError("chi-square test needs at least one observation");

  std::vector<double> obs;
  std::vector<double> exp;
  double pooled_obs = static_cast<double>(overflow_count);
  double covered = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0.0) throw DomainError("probabilities must be nonnegative");
    covered += probs[i];
  }
  double pooled_exp = std::max(0.0, 1.0 - covered) * total;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double e = probs[i] * total;
    if (e < min_expected) {
      pooled_obs += static_cast<double>(observed[i]);
      pooled_exp += e;
    } else {
      obs.push_back(static_cast<double>(observed[i]));
      exp.push_back(e);
    }
  }
  if (pooled_exp >= min_expected) {
    obs.push_back(pooled_obs);
    exp.push_back(pooled_exp);
  } else if (!exp.empty()) {
    // Too little mass to stand alone: fold into the smallest retained bin.
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < exp.size(); ++i) {
      if (exp[i] < exp[smallest]) smallest = i;
    }
    obs[smallest] += pooled_obs;
    exp[smallest] += pooled_exp;
  }

  ChiSquareResult r;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double diff = obs[i] - exp[i];
    r.statistic += diff * diff / exp[i];
  }
  r.bins_used = static_cast<int>(obs.size());
  r.dof = r.bins_used - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                       double min_expected) {
  if (a.size() != b.size()) throw DomainError("samples must share bins");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  if (na <= 0.0 || nb <= 0.0) throw DomainError("both samples need observations");
  const double n = na + nb;

  // Pool bins whose smaller expected count falls below the threshold.
  std::vector<double> oa;
  std::vector<double> ob;
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double row = static_cast<double>(a[i] + b[i]);
    if (row * std::min(na, nb) / n < min_expected) {
      pa += static_cast<double>(a[i]);
      pb += static_cast<double>(b[i]);
    } else {
      oa.push_back(static_cast<double>(a[i]));
      ob.push_back(static_cast<double>(b[i]));
    }
  }
  if (pa + pb > 0.0) {
    oa.push_back(pa);
    ob.push_back(pb);
  }

  ChiSquareResult r;
  for (std::size_t i = 0; i < oa.size(); ++i) {
    const double row = oa[i] + ob[i];
    const double ea = row * na / n;
    const double eb = row * nb / n;
    r.statistic += (oa[i] - ea) * (oa[i] - ea) / ea + (ob[i] - eb) * (ob[i] - eb) / eb;
  }
  r.bins_used = static_cast<int>(oa.size());
  r.dof = r.bins_used - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

}  // namespace asep
