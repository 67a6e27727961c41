#pragma once

// Basic coupling of two ASEPs through a label process. xi is a single-species
// ASEP (right jumps at rate 1, left jumps at rate q); the labels x_1 < ... < x_d
// pick out which xi particles are second class, counting particles from the
// leftmost one starting at 0. eta is xi with those particles removed.

#include "asep/blocking.hpp"
#include "asep/qseries.hpp"
#include "asep/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace asep {

/// 0 <= x_1 < x_2 < ... < x_d.
class LabelVector {
 public:
  LabelVector() = default;
  explicit LabelVector(std::vector<int> x);

  const std::vector<int>& values() const noexcept { return x_; }
  int d() const noexcept { return static_cast<int>(x_.size()); }
  int operator[](std::size_t j) const { return x_.at(j); }
  long sum() const noexcept;

  friend bool operator==(const LabelVector&, const LabelVector&) = default;
  friend auto operator<=>(const LabelVector&, const LabelVector&) = default;

 private:
  std::vector<int> x_;
};

/// X_1 < X_2 < ... < X_d.
class PositionVector {
 public:
  PositionVector() = default;
  explicit PositionVector(std::vector<int> sites);

  const std::vector<int>& values() const noexcept { return m_; }
  int d() const noexcept { return static_cast<int>(m_.size()); }
  int operator[](std::size_t j) const { return m_.at(j); }

  friend bool operator==(const PositionVector&, const PositionVector&) = default;
  friend auto operator<=>(const PositionVector&, const PositionVector&) = default;

 private:
  std::vector<int> m_;
};

struct CoupledState {
  WindowState xi;
  LabelVector labels;
};

enum class MoveKind : std::uint8_t {
  XiRight,     // xi particle at `where` moves to where+1
  XiLeft,      // xi particle at `where` moves to where-1
  LabelRight,  // label slot `where` moves to the next particle on the right
  LabelLeft,   // label slot `where` moves to the next particle on the left
};

std::string to_string(MoveKind kind);

struct Transition {
  MoveKind kind;
  int where;
  double rate;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Event {
  double time;
  MoveKind kind;
  int where;
  /// True when the move changes the position of a second-class particle.
  bool moves_second_class;
};

class EventLog {
 public:
  /// Appends an event; times must be strictly increasing.
  void push(const Event& e);
  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

 private:
  std::vector<Event> events_;
};

/// Every move with positive rate. Jumps never cross the window boundary;
/// label moves need the two xi particles involved to be adjacent and the
/// target particle to be unlabeled.
std::vector<Transition> enabled_transitions(const CoupledState& s, const AsepParams& p);

void apply_transition(CoupledState& s, const Transition& t);

/// One exact CTMC step. Returns the holding time. Appends to `log` if given,
/// stamping the event at now + holding time.
double gillespie_step(CoupledState& s, const AsepParams& p, Rng& rng, EventLog* log = nullptr, double now = 0.0);

/// Site of the particle carrying each label.
PositionVector second_class_positions(const CoupledState& s);

/// Labels of the particles at the given sites of xi.
LabelVector labels_from_positions(const WindowState& xi, const PositionVector& X);

/// xi with the second-class particles removed.
WindowState eta_from(const CoupledState& s);

/// pi(x) = prod_{i<=d} (1 - q^i) q^{sum x - d(d-1)/2}.
double pi_label(const LabelVector& x, QParam q);

struct BalanceReport {
  long states = 0;
  long moves_checked = 0;
  long violations = 0;
  double max_deviation = 0.0;
  bool pass = true;
};

/// Checks pi(x) q == pi(x + e_j) for every unit right move inside x_d <= cap.
BalanceReport pi_detailed_balance_check(int d, QParam q, int cap, double tol = 1e-12);

/// Sum of pi over label vectors with x_d <= cap.
double pi_truncated_mass(int d, QParam q, int cap);

/// Exact draw from pi via independent geometric gaps.
LabelVector sample_pi(int d, QParam q, Rng& rng);

/// P(some second-class particle at m) with xi ~ mu^c.
double prob_second_class_at(int m, const AsepParams& p, int d);

/// P(X = m) with xi ~ mu^c; d must equal m.d().
double prob_positions(const PositionVector& m, const AsepParams& p, int d);

/// mu^c(particles at m_i with k_i particles to their left, all i), closed form.
double conditional_xi_given_labels(const PositionVector& m, const LabelVector& k, const AsepParams& p,
                                   const TruncationPolicy& pol = {});

/// Same event evaluated as site marginals times one half-infinite and d-1
/// finite-window particle-count laws.
double conditional_xi_given_labels_factored(const PositionVector& m, const LabelVector& k, const AsepParams& p,
                                            const TruncationPolicy& pol = {});

/// Both sides of the single-second-class recursion for the left particle
/// count: with P(x >= k) = q^k and P(x <= k) = 1 - q^{k+1},
///   mu^c(N=k) = mu^{c-1}(N=k) q^k + mu^{c-1}(N=k+1)(1 - q^{k+1}).
IdentitySides label_recursion_sides(int m, long k, const AsepParams& p, const TruncationPolicy& pol = {});

// ---------------------------------------------------------------------------
// Stationary simulation

struct SimulationConfig {
  double q = 0.5;
  double c = 0.0;
  int d = 1;
  int lo = -25;
  int hi = 25;
  double T = 50.0;
  int replicas = 200;
  std::uint64_t seed = 1;
  double sample_dt = 1.0;
  /// Snapshots with a second-class particle closer than this to an edge count
  /// as contaminated.
  int margin = 5;
  /// Boundary tolerance for the initial exact sample.
  double boundary_eps = 1e-6;
  /// Fraction of contaminated snapshots above which the run is flagged.
  double max_contamination = 1e-3;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;

  void validate() const;
};

/// Mean and between-replica standard error of a per-replica average.
struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

struct SimulationReport {
  SimulationConfig config;
  long snapshots_per_replica = 0;
  long total_snapshots = 0;
  std::uint64_t events = 0;

  /// Per site of [lo, hi]: time-averaged occupancies of xi and eta and the
  /// frequency of a second-class particle at the site.
  std::vector<Estimate> xi_occupancy;
  std::vector<Estimate> eta_occupancy;
  std::vector<Estimate> second_class_at;
  /// xi occupancy over the t = 0 snapshots only.
  std::vector<Estimate> xi_initial;

  /// Joint histogram of X and label histogram, with between-replica errors.
  std::map<std::vector<int>, Estimate> positions;
  std::map<std::vector<int>, std::uint64_t> position_counts;
  std::map<std::vector<int>, std::uint64_t> label_counts;
  /// Label vector of each replica at time T (one independent draw per replica).
  std::map<std::vector<int>, std::uint64_t> final_label_counts;

  std::uint64_t contaminated_snapshots = 0;
  std::uint64_t conservation_violations = 0;
  double contamination_fraction = 0.0;
  bool contamination_exceeded = false;
  /// Largest |z| between time-averaged and initial xi occupancy over sites.
  double max_stationarity_z = 0.0;

  Estimate site(const std::vector<Estimate>& v, int i) const { return v.at(static_cast<std::size_t>(i - config.lo)); }
};

/// Runs independent replicas from xi ~ mu^c, labels ~ pi and records
/// snapshots every sample_dt up to T. Output depends only on the config.
SimulationReport simulate_stationary(const SimulationConfig& cfg);

/// Throws BoundaryContamination if the report is flagged.
void require_clean(const SimulationReport& r);

}  // namespace asep
