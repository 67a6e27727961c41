#include "asep/blocking.hpp"

#include "asep/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace asep {

namespace {

double half_triangle(long k) { return 0.5 * static_cast<double>(k) * static_cast<double>(k - 1); }

// Log-weight of N = l in the blocking measure: (l(l+1)/2 - l c) log q.
double log_weight_N(long l, const AsepParams& p) {
  const double ld = static_cast<double>(l);
  return (0.5 * ld * (ld + 1.0) - ld * p.c) * p.q.log();
}

// log sum_l q^{l(l+1)/2 - l c}, summed outward from the peak until terms fall
// below 1e-18 of the largest.
double log_normalizer_N(const AsepParams& p, const TruncationPolicy& pol) {
  pol.validate();
  const long peak = std::lround(p.c - 0.5);
  const double top = log_weight_N(peak, p);
  const double cutoff = std::log(1e-18);
  double sum = 1.0;
  for (int dir : {-1, 1}) {
    for (long step = 1;; ++step) {
      if (step > pol.max_terms) throw TruncationNotConverged("normalizer of the N law did not converge");
      const double rel = log_weight_N(peak + dir * step, p) - top;
      if (rel < cutoff) break;
      sum += std::exp(rel);
    }
  }
  return top + std::log(sum);
}

}  // namespace

// ---------------------------------------------------------------------------
// WindowState

WindowState::WindowState(int lo, int hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw DomainError("window requires lo <= hi");
  bits_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
}

WindowState::WindowState(int lo, int hi, std::vector<std::uint8_t> bits) : lo_(lo), hi_(hi), bits_(std::move(bits)) {
  if (lo > hi) throw DomainError("window requires lo <= hi");
  if (bits_.size() != static_cast<std::size_t>(hi - lo + 1)) throw DomainError("window bits do not match its width");
  for (auto b : bits_) {
    if (b > 1) throw DomainError("occupancy must be 0 or 1");
  }
}

int WindowState::at(int site) const noexcept {
  if (site < lo_) return 0;
  if (site > hi_) return 1;
  return bits_[static_cast<std::size_t>(site - lo_)];
}

void WindowState::set(int site, int value) {
  if (!contains(site)) throw DomainError("site outside the window");
  if (value != 0 && value != 1) throw DomainError("occupancy must be 0 or 1");
  bits_[static_cast<std::size_t>(site - lo_)] = static_cast<std::uint8_t>(value);
}

int WindowState::particle_count() const noexcept {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<int> WindowState::particle_sites() const {
  std::vector<int> out;
  for (int i = lo_; i <= hi_; ++i) {
    if (at(i)) out.push_back(i);
  }
  return out;
}

long WindowState::particles_at_or_left_of(int m) const noexcept {
  if (m < lo_) return 0;
  long count = 0;
  for (int i = lo_; i <= std::min(m, hi_); ++i) count += at(i);
  // Frozen particles beyond hi up to m.
  if (m > hi_) count += m - hi_;
  return count;
}

long WindowState::conserved_N() const noexcept {
  long holes_right = 0;
  for (int i = std::max(1, lo_); i <= hi_; ++i) holes_right += 1 - at(i);
  // Frozen holes left of the window that sit right of 0.
  if (lo_ > 1) holes_right += lo_ - 1;
  return holes_right - particles_at_or_left_of(0);
}

// ---------------------------------------------------------------------------

double CountDist::total() const noexcept {
  double s = 0.0;
  for (double v : probs) s += v;
  return s;
}

double CountDist::at(long value) const noexcept {
  const long idx = value - first;
  if (idx < 0 || idx >= static_cast<long>(probs.size())) return 0.0;
  return probs[static_cast<std::size_t>(idx)];
}

double marginal(int i, int z, const AsepParams& p) {
  if (z != 0 && z != 1) throw DomainError("marginal occupancy must be 0 or 1");
  // P(1) = 1 / (1 + q^{i-c}), P(0) = 1 / (1 + q^{c-i}).
  const double x = (z == 1 ? 1.0 : -1.0) * (static_cast<double>(i) - p.c);
  return 1.0 / (1.0 + p.q.pow(x));
}

void check_window(int lo, int hi, const AsepParams& p, double eps) {
  if (lo > hi) throw DomainError("window requires lo <= hi");
  if (!(eps > 0.0)) throw DomainError("window eps must be positive");
  if (marginal(lo, 1, p) >= eps || marginal(hi, 0, p) >= eps) {
    throw WindowTooNarrow("window [" + std::to_string(lo) + "," + std::to_string(hi) +
                          "] leaves boundary marginals further than eps from the ground state");
  }
}

std::pair<int, int> window_for(const AsepParams& p, double eps) {
  const int lo0 = static_cast<int>(std::floor(p.c));
  const int hi0 = static_cast<int>(std::ceil(p.c));
  for (int half = 0; half < 1000000; ++half) {
    if (marginal(lo0 - half, 1, p) < eps && marginal(hi0 + half, 0, p) < eps) return {lo0 - half, hi0 + half};
  }
  throw WindowTooNarrow("no window found for the requested eps");
}

WindowState sample_blocking(int lo, int hi, const AsepParams& p, Rng& rng, double eps) {
  check_window(lo, hi, p, eps);
  WindowState s(lo, hi);
  for (int i = lo; i <= hi; ++i) s.set(i, rng.bernoulli(marginal(i, 1, p)) ? 1 : 0);
  return s;
}

double prob_N(long n, const AsepParams& p, const TruncationPolicy& pol) {
  return std::exp(log_weight_N(n, p) - log_normalizer_N(p, pol));
}

double prob_N_at(int m, long n, const AsepParams& p, const TruncationPolicy& pol) {
  return prob_N(n + m, p, pol);
}

double prob_left_particles(int m, long k, const AsepParams& p, const TruncationPolicy& pol) {
  if (k < 0) return 0.0;
  const double x = p.c - m;
  const double kd = static_cast<double>(k);
  const double log_num = (kd * x + half_triangle(k)) * p.q.log();
  return std::exp(log_num - log_qq_pochhammer(p.q, static_cast<int>(k)) - log_neg_qpow_infinite(x, p.q, pol));
}

double prob_window_particles(int m1, int m2, int k, const AsepParams& p) {
  if (m2 <= m1) throw DomainError("window law requires m1 < m2");
  const int mh = m2 - m1 - 1;
  if (k < 0 || k > mh) throw DomainError("particle count outside 0..m2-m1-1");
  const double x = p.c + 1.0 - m2;
  const double log_num = (static_cast<double>(k) * x + half_triangle(k)) * p.q.log();
  return std::exp(log_num - log_neg_qpow_finite(x, p.q, mh) + std::log(qbinomial(mh, k, p.q)));
}

double prob_right_holes(int m, long n, const AsepParams& p, const TruncationPolicy& pol) {
  return prob_left_particles(m, n, p.with_c(2.0 * m + 1.0 - p.c), pol);
}

bool ShiftReport::all_pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& r) { return r.pass; });
}

ShiftReport shift_relation_checks(const AsepParams& p, int m, long k, double tol, const TruncationPolicy& pol) {
  ShiftReport rep;
  auto add = [&](std::string name, double lhs, double rhs) {
    RelationCheck r{std::move(name), lhs, rhs, rel_deviation(lhs, rhs), false};
    r.pass = r.deviation <= tol;
    rep.checks.push_back(std::move(r));
  };
  const AsepParams up = p.with_c(p.c + 1.0);
  const AsepParams down = p.with_c(p.c - 1.0);
  const double z_next = 1.0 + p.q.pow(p.c - (m + 1));
  const double kd = static_cast<double>(k);

  add("translate/left-particles", prob_left_particles(m, k, p, pol), prob_left_particles(m + 1, k, up, pol));
  add("translate/right-holes", prob_right_holes(m, k, p, pol), prob_right_holes(m + 1, k, up, pol));
  add("translate/N", prob_N_at(m, k, p, pol), prob_N_at(m + 1, k, up, pol));
  add("c-shift/left-particles", prob_left_particles(m, k, down, pol),
      p.q.pow(-kd) / z_next * prob_left_particles(m, k, p, pol));
  add("c-shift/right-holes", prob_right_holes(m, k, down, pol),
      p.q.pow(kd + (m + 1 - p.c)) * z_next * prob_right_holes(m, k, p, pol));
  add("c-shift/N", prob_N_at(m, k, down, pol), p.q.pow(kd + (m + 1 - p.c)) * prob_N_at(m, k, p, pol));
  return rep;
}

CountDist brute_force_window_law(int m1, int m2, const AsepParams& p) {
  if (m2 <= m1) throw DomainError("window law requires m1 < m2");
  const int mh = m2 - m1 - 1;
  if (mh > kMaxBruteForceWindow) throw SizeLimit("brute-force window law is capped at 20 sites");
  std::vector<double> p1(static_cast<std::size_t>(mh));
  std::vector<double> p0(static_cast<std::size_t>(mh));
  for (int s = 0; s < mh; ++s) {
    p1[static_cast<std::size_t>(s)] = marginal(m1 + 1 + s, 1, p);
    p0[static_cast<std::size_t>(s)] = marginal(m1 + 1 + s, 0, p);
  }
  CountDist out;
  out.first = 0;
  out.probs.assign(static_cast<std::size_t>(mh) + 1, 0.0);
  const std::uint32_t patterns = 1u << mh;
  for (std::uint32_t pat = 0; pat < patterns; ++pat) {
    double w = 1.0;
    int count = 0;
    for (int s = 0; s < mh; ++s) {
      const bool occ = (pat >> s) & 1u;
      w *= occ ? p1[static_cast<std::size_t>(s)] : p0[static_cast<std::size_t>(s)];
      count += occ;
    }
    out.probs[static_cast<std::size_t>(count)] += w;
  }
  return out;
}

}  // namespace asep
