#pragma once

// ASEP blocking measures: site marginals, exact window sampling and the
// closed-form laws of the conserved quantity and of particle counts.
//
// Orientation: occupation probability 1 / (1 + q^{i-c}) increases to the
// right, so the ground state is 1{i > c}. Windows freeze sites left of `lo`
// empty and sites right of `hi` occupied.

#include "asep/qseries.hpp"
#include "asep/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace asep {

struct AsepParams {
  QParam q;
  double c = 0.0;

  AsepParams(QParam q_, double c_) : q(q_), c(c_) {}
  AsepParams(double q_, double c_) : q(q_), c(c_) {}
  AsepParams with_c(double c_) const { return {q, c_}; }
};

/// Occupancy on [lo, hi]; empty to the left of the window, full to its right.
class WindowState {
 public:
  WindowState(int lo, int hi);
  WindowState(int lo, int hi, std::vector<std::uint8_t> bits);

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  int width() const noexcept { return hi_ - lo_ + 1; }
  bool contains(int site) const noexcept { return site >= lo_ && site <= hi_; }

  /// Occupancy of any site, applying the frozen outside convention.
  int at(int site) const noexcept;
  void set(int site, int value);
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  int particle_count() const noexcept;
  /// Sites of the window particles, left to right.
  std::vector<int> particle_sites() const;
  /// Holes strictly right of 0 minus particles at or left of 0.
  long conserved_N() const noexcept;
  /// Particles at or left of site m (finite by the left-empty convention).
  long particles_at_or_left_of(int m) const noexcept;

  friend bool operator==(const WindowState&, const WindowState&) = default;

 private:
  int lo_;
  int hi_;
  std::vector<std::uint8_t> bits_;
};

/// Law on the integers first, first+1, ...
struct CountDist {
  long first = 0;
  std::vector<double> probs;

  double total() const noexcept;
  double at(long value) const noexcept;
};

/// mu^c_i(z) = q^{-(i-c) z} / (1 + q^{-(i-c)}).
double marginal(int i, int z, const AsepParams& p);

inline constexpr double kDefaultWindowEps = 1e-12;

/// Throws WindowTooNarrow unless P(occupied at lo) < eps and P(empty at hi) < eps.
void check_window(int lo, int hi, const AsepParams& p, double eps = kDefaultWindowEps);

/// Smallest symmetric-about-c window meeting check_window.
std::pair<int, int> window_for(const AsepParams& p, double eps = kDefaultWindowEps);

/// Independent Bernoulli sites with the blocking marginals.
WindowState sample_blocking(int lo, int hi, const AsepParams& p, Rng& rng, double eps = kDefaultWindowEps);

/// mu^c(N = n).
double prob_N(long n, const AsepParams& p, const TruncationPolicy& pol = {});

/// Law of N computed with the reference site moved to m: equals prob_N(n + m).
double prob_N_at(int m, long n, const AsepParams& p, const TruncationPolicy& pol = {});

/// mu^c(particles at or left of m == k).
double prob_left_particles(int m, long k, const AsepParams& p, const TruncationPolicy& pol = {});

/// mu^c(k particles on the m2 - m1 - 1 sites strictly between m1 and m2).
double prob_window_particles(int m1, int m2, int k, const AsepParams& p);

/// mu^c(holes strictly right of m == n).
double prob_right_holes(int m, long n, const AsepParams& p, const TruncationPolicy& pol = {});

struct RelationCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  bool pass = false;
};

struct ShiftReport {
  std::vector<RelationCheck> checks;
  bool all_pass() const noexcept;
};

/// Translation and c -> c-1 relations for the particle, hole and N laws.
ShiftReport shift_relation_checks(const AsepParams& p, int m, long k, double tol = 1e-10,
                                  const TruncationPolicy& pol = {});

inline constexpr int kMaxBruteForceWindow = 20;

/// Law of the particle count strictly between m1 and m2 by summing all
/// 2^{m2-m1-1} patterns.
CountDist brute_force_window_law(int m1, int m2, const AsepParams& p);

}  // namespace asep
