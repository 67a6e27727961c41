#include "asep/coupling.hpp"

#include "asep/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace asep {

LabelVector::LabelVector(std::vector<int> x) : x_(std::move(x)) {
  for (std::size_t j = 0; j < x_.size(); ++j) {
    if (x_[j] < 0) throw DomainError("labels must be nonnegative");
    if (j > 0 && x_[j] <= x_[j - 1]) throw DomainError("labels must be strictly increasing");
  }
}

long LabelVector::sum() const noexcept {
  long s = 0;
  for (int v : x_) s += v;
  return s;
}

PositionVector::PositionVector(std::vector<int> sites) : m_(std::move(sites)) {
  for (std::size_t j = 1; j < m_.size(); ++j) {
    if (m_[j] <= m_[j - 1]) throw DomainError("positions must be strictly increasing");
  }
}

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::XiRight: return "xi-right";
    case MoveKind::XiLeft: return "xi-left";
    case MoveKind::LabelRight: return "label-right";
    case MoveKind::LabelLeft: return "label-left";
  }
  return "unknown";
}

void EventLog::push(const Event& e) {
  if (!events_.empty() && !(e.time > events_.back().time)) {
    throw DomainError("event times must be strictly increasing");
  }
  events_.push_back(e);
}

// ---------------------------------------------------------------------------
// Dynamics

std::vector<Transition> enabled_transitions(const CoupledState& s, const AsepParams& p) {
  const WindowState& xi = s.xi;
  std::vector<Transition> out;
  for (int i = xi.lo(); i < xi.hi(); ++i) {
    if (xi.at(i) == 1 && xi.at(i + 1) == 0) out.push_back({MoveKind::XiRight, i, 1.0});
  }
  for (int i = xi.lo() + 1; i <= xi.hi(); ++i) {
    if (xi.at(i) == 1 && xi.at(i - 1) == 0) out.push_back({MoveKind::XiLeft, i, p.q.value()});
  }

  const std::vector<int> sites = xi.particle_sites();
  const int count = static_cast<int>(sites.size());
  const auto& x = s.labels.values();
  const int d = static_cast<int>(x.size());
  for (int j = 0; j < d; ++j) {
    const int label = x[static_cast<std::size_t>(j)];
    if (label >= count) continue;
    const int site = sites[static_cast<std::size_t>(label)];
    const bool right_free = j == d - 1 || x[static_cast<std::size_t>(j + 1)] != label + 1;
    if (label + 1 < count && right_free && sites[static_cast<std::size_t>(label + 1)] == site + 1) {
      out.push_back({MoveKind::LabelRight, j, p.q.value()});
    }
    const bool left_free = j == 0 || x[static_cast<std::size_t>(j - 1)] != label - 1;
    if (label >= 1 && left_free && sites[static_cast<std::size_t>(label - 1)] == site - 1) {
      out.push_back({MoveKind::LabelLeft, j, 1.0});
    }
  }
  return out;
}

void apply_transition(CoupledState& s, const Transition& t) {
  switch (t.kind) {
    case MoveKind::XiRight:
    case MoveKind::XiLeft: {
      const int to = t.where + (t.kind == MoveKind::XiRight ? 1 : -1);
      if (!s.xi.contains(t.where) || !s.xi.contains(to) || s.xi.at(t.where) != 1 || s.xi.at(to) != 0) {
        throw DomainError("xi jump is not allowed in this state");
      }
      s.xi.set(t.where, 0);
      s.xi.set(to, 1);
      return;
    }
    case MoveKind::LabelRight:
    case MoveKind::LabelLeft: {
      std::vector<int> x = s.labels.values();
      if (t.where < 0 || t.where >= static_cast<int>(x.size())) throw DomainError("label slot out of range");
      x[static_cast<std::size_t>(t.where)] += t.kind == MoveKind::LabelRight ? 1 : -1;
      s.labels = LabelVector(std::move(x));
      return;
    }
  }
}

double gillespie_step(CoupledState& s, const AsepParams& p, Rng& rng, EventLog* log, double now) {
  const std::vector<Transition> moves = enabled_transitions(s, p);
  double total = 0.0;
  for (const auto& t : moves) total += t.rate;
  if (!(total > 0.0)) throw AbsorbingState("no transition is enabled");

  const double dt = rng.exponential(total);
  const double u = rng.uniform(total);
  std::size_t pick = moves.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    acc += moves[i].rate;
    if (u < acc) {
      pick = i;
      break;
    }
  }
  const Transition& t = moves[pick];

  bool second_class = t.kind == MoveKind::LabelRight || t.kind == MoveKind::LabelLeft;
  if (!second_class && log != nullptr) {
    const long index = s.xi.particles_at_or_left_of(t.where) - 1;
    for (int label : s.labels.values()) second_class = second_class || label == index;
  }
  apply_transition(s, t);
  if (log != nullptr) log->push({now + dt, t.kind, t.where, second_class});
  return dt;
}

PositionVector second_class_positions(const CoupledState& s) {
  const std::vector<int> sites = s.xi.particle_sites();
  std::vector<int> X;
  X.reserve(static_cast<std::size_t>(s.labels.d()));
  for (int label : s.labels.values()) {
    if (label >= static_cast<int>(sites.size())) {
      throw LabelOutOfRange("label " + std::to_string(label) + " exceeds the particles inside the window");
    }
    X.push_back(sites[static_cast<std::size_t>(label)]);
  }
  return PositionVector(std::move(X));
}

LabelVector labels_from_positions(const WindowState& xi, const PositionVector& X) {
  std::vector<int> labels;
  for (int site : X.values()) {
    if (!xi.contains(site) || xi.at(site) != 1) throw DomainError("second-class site is not a window particle");
    labels.push_back(static_cast<int>(xi.particles_at_or_left_of(site) - 1));
  }
  return LabelVector(std::move(labels));
}

WindowState eta_from(const CoupledState& s) {
  WindowState eta = s.xi;
  const PositionVector X = second_class_positions(s);  // keep alive across the loop
  for (int site : X.values()) eta.set(site, 0);
  return eta;
}

// ---------------------------------------------------------------------------
// Label law

namespace {

double log_pi_constant(int d, QParam q) {
  double s = 0.0;
  for (int i = 1; i <= d; ++i) s += std::log1p(-std::pow(q.value(), i));
  return s - 0.5 * d * (d - 1) * q.log();
}

// Calls f on every strictly increasing vector in {0..cap}^d.
template <class F>
void for_each_label_vector(int d, int cap, F&& f) {
  if (d <= 0 || cap < d - 1) return;
  std::vector<int> x(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = j;
  for (;;) {
    f(x);
    int j = d - 1;
    while (j >= 0 && x[static_cast<std::size_t>(j)] == cap - (d - 1 - j)) --j;
    if (j < 0) return;
    ++x[static_cast<std::size_t>(j)];
    for (int t = j + 1; t < d; ++t) x[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(t - 1)] + 1;
  }
}

}  // namespace

double pi_label(const LabelVector& x, QParam q) {
  return std::exp(log_pi_constant(x.d(), q) + static_cast<double>(x.sum()) * q.log());
}

BalanceReport pi_detailed_balance_check(int d, QParam q, int cap, double tol) {
  if (d < 1) throw DomainError("detailed balance check needs d >= 1");
  BalanceReport rep;
  for_each_label_vector(d, cap, [&](const std::vector<int>& x) {
    ++rep.states;
    const double here = pi_label(LabelVector(x), q);
    for (int j = 0; j < d; ++j) {
      std::vector<int> y = x;
      ++y[static_cast<std::size_t>(j)];
      const bool ok = j == d - 1 ? y[static_cast<std::size_t>(j)] <= cap
                                 : y[static_cast<std::size_t>(j)] < x[static_cast<std::size_t>(j + 1)];
      if (!ok) continue;
      ++rep.moves_checked;
      // Right move at rate q from x, left move at rate 1 back from y.
      const double dev = rel_deviation(here * q.value(), pi_label(LabelVector(y), q) * 1.0);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > tol) ++rep.violations;
    }
  });
  rep.pass = rep.violations == 0;
  return rep;
}

double pi_truncated_mass(int d, QParam q, int cap) {
  if (d < 1) throw DomainError("pi mass needs d >= 1");
  double sum = 0.0;
  for_each_label_vector(d, cap, [&](const std::vector<int>& x) { sum += pi_label(LabelVector(x), q); });
  return sum;
}

LabelVector sample_pi(int d, QParam q, Rng& rng) {
  if (d < 0) throw DomainError("d must be nonnegative");
  std::vector<int> x;
  x.reserve(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    // Gap j has ratio q^{d+1-j}; the first gap is x_1 itself.
    const auto gap = static_cast<int>(rng.geometric(std::pow(q.value(), d + 1 - j)));
    x.push_back(j == 1 ? gap : x.back() + 1 + gap);
  }
  return LabelVector(std::move(x));
}

// ---------------------------------------------------------------------------
// Closed forms

double prob_second_class_at(int m, const AsepParams& p, int d) {
  if (d < 1) throw DomainError("need at least one second-class particle");
  const double x = p.c - m;
  return std::exp(std::log1p(-std::pow(p.q.value(), d)) + x * p.q.log() - log1p_qpow(x, p.q) -
                  log1p_qpow(x + d, p.q));
}

double prob_positions(const PositionVector& m, const AsepParams& p, int d) {
  if (d < 1) throw DomainError("need at least one second-class particle");
  if (m.d() != d) throw DomainError("position vector length must equal d");
  double lg = 0.0;
  double msum = 0.0;
  for (int i = 1; i <= d; ++i) lg += std::log1p(-std::pow(p.q.value(), i));
  for (int j = 1; j <= d; ++j) {
    const double mj = m[static_cast<std::size_t>(j - 1)];
    msum += mj;
    lg -= log1p_qpow(p.c + d - j - mj, p.q) + log1p_qpow(p.c + d + 1 - j - mj, p.q);
  }
  lg += (d * p.c - msum) * p.q.log();
  return std::exp(lg);
}

namespace {

void check_conditional_args(const PositionVector& m, const LabelVector& k) {
  if (m.d() < 1) throw DomainError("need at least one position");
  if (m.d() != k.d()) throw DomainError("positions and labels must have the same length");
}

}  // namespace

double conditional_xi_given_labels(const PositionVector& m, const LabelVector& k, const AsepParams& p,
                                   const TruncationPolicy& pol) {
  check_conditional_args(m, k);
  const int d = m.d();
  const double lq = p.q.log();
  const double k1 = k[0];
  const double x1 = p.c - m[0];
  double lg = ((k1 + 1.0) * x1 + 0.5 * k1 * (k1 + 1.0)) * lq - log_qq_pochhammer(p.q, k[0]) -
              log_neg_qpow_infinite(p.c - m[static_cast<std::size_t>(d - 1)], p.q, pol);
  for (int j = 1; j < d; ++j) {
    const auto J = static_cast<std::size_t>(j);
    const int kh = k[J] - k[J - 1] - 1;
    const int mh = m[J] - m[J - 1] - 1;
    if (kh > mh) return 0.0;
    const double xj = p.c - m[J];
    lg += ((kh + 1.0) * xj + 0.5 * kh * (kh + 1.0)) * lq + log_qq_pochhammer(p.q, mh) -
          log_qq_pochhammer(p.q, kh) - log_qq_pochhammer(p.q, mh - kh);
  }
  return std::exp(lg);
}

double conditional_xi_given_labels_factored(const PositionVector& m, const LabelVector& k, const AsepParams& p,
                                            const TruncationPolicy& pol) {
  check_conditional_args(m, k);
  const int d = m.d();
  double v = prob_left_particles(m[0] - 1, k[0], p, pol);
  for (int i = 0; i < d; ++i) v *= marginal(m[static_cast<std::size_t>(i)], 1, p);
  for (int j = 1; j < d; ++j) {
    const auto J = static_cast<std::size_t>(j);
    const int kh = k[J] - k[J - 1] - 1;
    const int mh = m[J] - m[J - 1] - 1;
    if (kh > mh) return 0.0;
    v *= prob_window_particles(m[J - 1], m[J], kh, p);
  }
  return v;
}

IdentitySides label_recursion_sides(int m, long k, const AsepParams& p, const TruncationPolicy& pol) {
  const AsepParams down = p.with_c(p.c - 1.0);
  IdentitySides out;
  out.lhs = prob_left_particles(m, k, p, pol);
  out.rhs = prob_left_particles(m, k, down, pol) * std::pow(p.q.value(), static_cast<double>(k)) +
            prob_left_particles(m, k + 1, down, pol) * (1.0 - std::pow(p.q.value(), static_cast<double>(k + 1)));
  return out;
}

// ---------------------------------------------------------------------------
// Simulation

void SimulationConfig::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0, 1)");
  if (d < 0) throw DomainError("d must be nonnegative");
  if (lo >= hi) throw DomainError("window requires lo < hi");
  if (!(T >= 0.0)) throw DomainError("T must be nonnegative");
  if (replicas < 1) throw DomainError("replicas must be positive");
  if (!(sample_dt > 0.0)) throw DomainError("sample_dt must be positive");
  if (margin < 0) throw DomainError("margin must be nonnegative");
  if (!(boundary_eps > 0.0 && boundary_eps < 1.0)) throw DomainError("boundary_eps must lie in (0, 1)");
  if (!(max_contamination >= 0.0)) throw DomainError("max_contamination must be nonnegative");
  if (threads < 0) throw DomainError("threads must be nonnegative");
}

namespace {

struct ReplicaResult {
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<double> sc;
  std::vector<double> xi0;
  std::map<std::vector<int>, std::uint64_t> positions;
  std::map<std::vector<int>, std::uint64_t> labels;
  std::vector<int> final_labels;
  std::uint64_t contaminated = 0;
  std::uint64_t violations = 0;
  std::uint64_t events = 0;
};

long snapshot_count(const SimulationConfig& cfg) {
  return static_cast<long>(std::floor(cfg.T / cfg.sample_dt + 1e-9)) + 1;
}

ReplicaResult run_replica(const SimulationConfig& cfg, std::uint64_t index) {
  const AsepParams p(cfg.q, cfg.c);
  Rng rng(derive_seed(cfg.seed, index));
  CoupledState s{sample_blocking(cfg.lo, cfg.hi, p, rng, cfg.boundary_eps), sample_pi(cfg.d, p.q, rng)};

  const auto width = static_cast<std::size_t>(cfg.hi - cfg.lo + 1);
  ReplicaResult r;
  r.xi.assign(width, 0.0);
  r.eta.assign(width, 0.0);
  r.sc.assign(width, 0.0);
  r.xi0.assign(width, 0.0);
  for (std::size_t i = 0; i < width; ++i) r.xi0[i] = s.xi.bits()[i];
  const int particles = s.xi.particle_count();
  const long snapshots = snapshot_count(cfg);

  auto record = [&]() {
    for (std::size_t i = 0; i < width; ++i) r.xi[i] += s.xi.bits()[i];
    ++r.labels[s.labels.values()];
    if (s.xi.particle_count() != particles) ++r.violations;
    const int count = particles;
    bool inside = true;
    for (int label : s.labels.values()) inside = inside && label < count;
    if (!inside) {
      ++r.contaminated;
      return;
    }
    const PositionVector X = second_class_positions(s);
    bool near_edge = false;
    for (int site : X.values()) near_edge = near_edge || site < cfg.lo + cfg.margin || site > cfg.hi - cfg.margin;
    if (near_edge) ++r.contaminated;
    const WindowState eta = eta_from(s);
    if (s.xi.conserved_N() != eta.conserved_N() - cfg.d) ++r.violations;
    for (std::size_t i = 0; i < width; ++i) r.eta[i] += eta.bits()[i];
    for (int site : X.values()) r.sc[static_cast<std::size_t>(site - cfg.lo)] += 1.0;
    if (cfg.d > 0) ++r.positions[X.values()];
  };

  double t = 0.0;
  long next = 0;
  while (next < snapshots) {
    const std::vector<Transition> moves = enabled_transitions(s, p);
    double total = 0.0;
    for (const auto& m : moves) total += m.rate;
    const double dt = total > 0.0 ? rng.exponential(total) : std::numeric_limits<double>::infinity();
    // Snapshots that fall before the next event see the current state.
    while (next < snapshots && static_cast<double>(next) * cfg.sample_dt < t + dt) {
      record();
      ++next;
    }
    if (next >= snapshots) break;
    double u = rng.uniform(total);
    std::size_t pick = moves.size() - 1;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      if (u < moves[i].rate) {
        pick = i;
        break;
      }
      u -= moves[i].rate;
    }
    apply_transition(s, moves[pick]);
    ++r.events;
    t += dt;
  }
  r.final_labels = s.labels.values();

  const double S = static_cast<double>(snapshots);
  for (std::size_t i = 0; i < width; ++i) {
    r.xi[i] /= S;
    r.eta[i] /= S;
    r.sc[i] /= S;
  }
  return r;
}

struct Accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
  }
  Estimate finish(double n) const {
    Estimate e;
    e.mean = sum / n;
    if (n > 1.0) {
      const double var = std::max(0.0, (sumsq - n * e.mean * e.mean) / (n - 1.0));
      e.se = std::sqrt(var / n);
    }
    return e;
  }
};

}  // namespace

SimulationReport simulate_stationary(const SimulationConfig& cfg) {
  cfg.validate();
  check_window(cfg.lo, cfg.hi, AsepParams(cfg.q, cfg.c), cfg.boundary_eps);

  const int R = cfg.replicas;
  std::vector<ReplicaResult> results(static_cast<std::size_t>(R));
  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, R);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= R) return;
      try {
        results[static_cast<std::size_t>(r)] = run_replica(cfg, static_cast<std::uint64_t>(r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(R);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in replica order so the report does not depend on scheduling.
  SimulationReport rep;
  rep.config = cfg;
  rep.snapshots_per_replica = snapshot_count(cfg);
  rep.total_snapshots = rep.snapshots_per_replica * R;
  const auto width = static_cast<std::size_t>(cfg.hi - cfg.lo + 1);
  std::vector<Accumulator> xi(width), eta(width), sc(width), xi0(width);
  std::map<std::vector<int>, Accumulator> pos;
  const double S = static_cast<double>(rep.snapshots_per_replica);
  for (const auto& r : results) {
    for (std::size_t i = 0; i < width; ++i) {
      xi[i].add(r.xi[i]);
      eta[i].add(r.eta[i]);
      sc[i].add(r.sc[i]);
      xi0[i].add(r.xi0[i]);
    }
    for (const auto& [key, n] : r.positions) {
      pos[key].add(static_cast<double>(n) / S);
      rep.position_counts[key] += n;
    }
    for (const auto& [key, n] : r.labels) rep.label_counts[key] += n;
    ++rep.final_label_counts[r.final_labels];
    rep.contaminated_snapshots += r.contaminated;
    rep.conservation_violations += r.violations;
    rep.events += r.events;
  }
  const double n = static_cast<double>(R);
  for (std::size_t i = 0; i < width; ++i) {
    rep.xi_occupancy.push_back(xi[i].finish(n));
    rep.eta_occupancy.push_back(eta[i].finish(n));
    rep.second_class_at.push_back(sc[i].finish(n));
    rep.xi_initial.push_back(xi0[i].finish(n));
  }
  for (const auto& [key, acc] : pos) rep.positions[key] = acc.finish(n);

  rep.contamination_fraction = static_cast<double>(rep.contaminated_snapshots) / static_cast<double>(rep.total_snapshots);
  rep.contamination_exceeded = rep.contamination_fraction > cfg.max_contamination;
  for (std::size_t i = 0; i < width; ++i) {
    // Floor by the binomial error of one draw per replica; edge sites otherwise look frozen.
    const double a = marginal(cfg.lo + static_cast<int>(i), 1, AsepParams(cfg.q, cfg.c));
    const double se = std::max(std::hypot(rep.xi_occupancy[i].se, rep.xi_initial[i].se), std::sqrt(a * (1.0 - a) / n));
    if (se > 0.0) {
      rep.max_stationarity_z =
          std::max(rep.max_stationarity_z, std::fabs(rep.xi_occupancy[i].mean - rep.xi_initial[i].mean) / se);
    }
  }
  return rep;
}

void require_clean(const SimulationReport& r) {
  if (r.contamination_exceeded) {
    throw BoundaryContamination("second-class particles reached the window margin in " +
                                std::to_string(r.contaminated_snapshots) + " snapshots");
  }
}

}  // namespace asep
