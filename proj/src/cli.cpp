#include "asep/cli.hpp"

#include "asep/blocking.hpp"
#include "asep/coupling.hpp"
#include "asep/error.hpp"
#include "asep/qseries.hpp"
#include "asep/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <variant>

namespace asep {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json meta = json::object();

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      c);
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  json doc;
  doc["meta"] = t.meta;
  doc["rows"] = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

void write_table(const Table& t, const std::string& format, std::ostream& os) {
  if (format == "json") {
    write_json(t, os);
  } else {
    write_csv(t, os);
  }
}

// Writes tables to `out_path` (a file for one table, a directory otherwise)
// or to the stream, separated by "# table <name>" lines.
void emit(const std::vector<Table>& tables, const std::string& format, const std::string& out_path,
          bool directory, std::ostream& out) {
  if (out_path.empty()) {
    for (const auto& t : tables) {
      if (tables.size() > 1) out << "# table " << t.name << '\n';
      write_table(t, format, out);
    }
    return;
  }
  namespace fs = std::filesystem;
  if (directory) {
    fs::create_directories(out_path);
    for (const auto& t : tables) {
      std::ofstream f(fs::path(out_path) / (t.name + "." + format), std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + out_path);
      write_table(t, format, f);
    }
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  for (const auto& t : tables) {
    if (tables.size() > 1) f << "# table " << t.name << '\n';
    write_table(t, format, f);
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---------------------------------------------------------------------------
// Argument helpers

struct Range {
  long lo = 0;
  long hi = 0;
};

Range parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const long v = std::stol(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    Range r;
    r.lo = std::stol(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    r.hi = std::stol(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (r.lo > r.hi) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError(std::string("--") + what, "expected an integer or a range lo:hi, got '" + text + "'");
  }
}

struct CommonOptions {
  std::string format = "csv";
  std::string out;
  double tol = kDefaultIdentityTol;
  double eps = 1e-17;
  int max_terms = 100000;

  TruncationPolicy policy() const { return {eps, max_terms}; }
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Output path");
  cmd->add_option("--tol", o.tol, "Relative tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--eps", o.eps, "Truncation threshold for infinite products and sums")->check(CLI::PositiveNumber);
  cmd->add_option("--max-terms", o.max_terms, "Hard cap on truncated terms")->check(CLI::PositiveNumber);
}

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw CLI::ValidationError("--q", "q must lie strictly inside (0, 1)");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  CommonOptions common;
  std::string identity;
  std::optional<double> q;
  double z = 1.0;
  int n = 0;
  std::optional<int> m;
  bool exact = false;
  int N = 25;
  int K = 6;
};

const std::vector<std::string> kReportColumns = {"identity", "parameters", "lhs",       "rhs",       "abs_deviation",
                                                 "rel_deviation", "lhs_bound", "rhs_bound", "tolerance", "pass"};

void add_report(Table& t, const IdentityReport& r) {
  t.add({r.identity, r.parameters, r.lhs, r.rhs, r.abs_deviation, r.rel_deviation, r.lhs_bound, r.rhs_bound,
         r.tolerance, r.pass});
}

void add_exact(Table& t, const std::string& identity, const std::string& parameters, bool pass) {
  t.add({identity, parameters, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{},
         std::monostate{}, std::monostate{}, 0.0, pass});
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  Table t;
  t.name = "verify";
  t.columns = kReportColumns;
  const bool all = o.identity == "all";
  auto wants = [&](const char* id) { return all || o.identity == id; };

  if (o.exact) {
    const int m_top = o.m.value_or(12);
    if (wants("durfee")) {
      const int n_lo = all ? -3 : o.n;
      const int n_hi = all ? 3 : o.n;
      for (int n = n_lo; n <= n_hi; ++n) {
        add_exact(t, "durfee-exact", "N=" + std::to_string(o.N) + " n=" + std::to_string(n),
                  verify_durfee_exact(o.N, n));
      }
    }
    if (wants("euler")) {
      add_exact(t, "euler-exact", "N=" + std::to_string(o.N) + " K=" + std::to_string(o.K),
                verify_euler_exact(o.N, o.K));
    }
    if (wants("qbinomial")) {
      for (int m = 0; m <= m_top; ++m) {
        add_exact(t, "qbinomial-exact", "m=" + std::to_string(m), verify_qbinomial_exact(m));
      }
      bool pascal = true;
      for (int m = 1; m <= m_top; ++m) {
        for (int k = 0; k <= m; ++k) pascal = pascal && q_pascal_check(m, k);
      }
      add_exact(t, "q-pascal", "m<=" + std::to_string(m_top), pascal);
    }
    if (o.identity == "jacobi") throw CLI::ValidationError("--exact", "the triple product has no exact suite");
  }
  if (o.q) {
    const QParam q(*o.q);
    const auto pol = o.common.policy();
    if (wants("durfee")) add_report(t, verify_durfee(q, o.n, pol, o.common.tol));
    if (wants("euler")) add_report(t, verify_euler(q, o.z, pol, o.common.tol));
    if (wants("qbinomial")) add_report(t, verify_qbinomial(q, o.z, o.m.value_or(5), o.common.tol));
    if (wants("jacobi")) add_report(t, verify_jacobi(q, o.z, pol, o.common.tol));
  }

  bool pass = true;
  for (const auto& row : t.rows) pass = pass && std::get<bool>(row.back());
  t.meta["command"] = "verify";
  t.meta["identity"] = o.identity;
  if (o.q) t.meta["q"] = *o.q;
  t.meta["z"] = o.z;
  t.meta["truncation"] = {{"eps", o.common.eps}, {"max_terms", o.common.max_terms}};
  t.meta["pass"] = pass;
  emit({t}, o.common.format, o.common.out, false, out);
  return pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  CommonOptions common;
  SimulationConfig cfg;
  std::string window = "-25:25";
};

json config_meta(const SimulationConfig& c) {
  return {{"q", c.q},
          {"c", c.c},
          {"d", c.d},
          {"seed", c.seed},
          {"window", {c.lo, c.hi}},
          {"T", c.T},
          {"replicas", c.replicas},
          {"sample_dt", c.sample_dt},
          {"margin", c.margin},
          {"boundary_eps", c.boundary_eps},
          {"max_contamination", c.max_contamination}};
}

std::vector<Cell> key_cells(const std::vector<int>& key) {
  std::vector<Cell> out;
  for (int v : key) out.emplace_back(static_cast<long long>(v));
  return out;
}

double z_score(double emp, double se, double analytic, double binomial_n) {
  const double floor_se = std::sqrt(std::max(analytic * (1.0 - analytic), 0.0) / binomial_n);
  const double s = std::max(se, floor_se);
  return s > 0.0 ? (emp - analytic) / s : 0.0;
}

int run_simulate(SimulateOptions o, std::ostream& out) {
  const Range w = parse_range(o.window, "window");
  o.cfg.lo = static_cast<int>(w.lo);
  o.cfg.hi = static_cast<int>(w.hi);
  check_q(o.cfg.q);
  try {
    o.cfg.validate();
  } catch (const DomainError& e) {
    throw CLI::ValidationError("simulate", e.what());
  }
  const SimulationReport rep = simulate_stationary(o.cfg);
  const SimulationConfig& c = rep.config;
  const AsepParams p(c.q, c.c);
  const AsepParams p_eta(c.q, c.c + c.d);
  const double n_snap = static_cast<double>(rep.total_snapshots);

  std::vector<Table> tables;
  Table marg;
  marg.name = "marginals";
  marg.columns = {"site", "xi_empirical", "xi_se", "xi_initial", "xi_analytic", "xi_z",
                  "eta_empirical", "eta_se", "eta_analytic", "eta_z"};
  for (int i = c.lo; i <= c.hi; ++i) {
    const Estimate xe = rep.site(rep.xi_occupancy, i);
    const Estimate ee = rep.site(rep.eta_occupancy, i);
    const double xa = marginal(i, 1, p);
    const double ea = marginal(i, 1, p_eta);
    marg.add({static_cast<long long>(i), xe.mean, xe.se, rep.site(rep.xi_initial, i).mean, xa,
              z_score(xe.mean, xe.se, xa, n_snap), ee.mean, ee.se, ea, z_score(ee.mean, ee.se, ea, n_snap)});
  }
  tables.push_back(marg);

  if (c.d > 0) {
    Table sites;
    sites.name = "second_class_sites";
    sites.columns = {"site", "empirical", "se", "analytic", "z"};
    for (int i = c.lo; i <= c.hi; ++i) {
      const Estimate e = rep.site(rep.second_class_at, i);
      const double a = prob_second_class_at(i, p, c.d);
      sites.add({static_cast<long long>(i), e.mean, e.se, a, z_score(e.mean, e.se, a, n_snap)});
    }
    tables.push_back(sites);

    Table pos;
    pos.name = "positions";
    for (int j = 1; j <= c.d; ++j) pos.columns.push_back("m" + std::to_string(j));
    for (const char* col : {"count", "empirical", "se", "analytic", "z"}) pos.columns.emplace_back(col);
    for (const auto& [key, est] : rep.positions) {
      auto row = key_cells(key);
      const double a = prob_positions(PositionVector(key), p, c.d);
      row.emplace_back(static_cast<long long>(rep.position_counts.at(key)));
      row.emplace_back(est.mean);
      row.emplace_back(est.se);
      row.emplace_back(a);
      row.emplace_back(z_score(est.mean, est.se, a, n_snap));
      pos.add(std::move(row));
    }
    tables.push_back(pos);

    Table lab;
    lab.name = "labels";
    for (int j = 1; j <= c.d; ++j) lab.columns.push_back("x" + std::to_string(j));
    for (const char* col : {"count", "empirical", "final_count", "analytic"}) lab.columns.emplace_back(col);
    for (const auto& [key, n] : rep.label_counts) {
      auto row = key_cells(key);
      const auto fin = rep.final_label_counts.find(key);
      row.emplace_back(static_cast<long long>(n));
      row.emplace_back(static_cast<double>(n) / n_snap);
      row.emplace_back(static_cast<long long>(fin == rep.final_label_counts.end() ? 0 : fin->second));
      row.emplace_back(pi_label(LabelVector(key), QParam(c.q)));
      lab.add(std::move(row));
    }
    tables.push_back(lab);
  }

  Table meta;
  meta.name = "meta";
  meta.columns = {"key", "value"};
  meta.add({"q", c.q});
  meta.add({"c", c.c});
  meta.add({"d", static_cast<long long>(c.d)});
  meta.add({"seed", std::to_string(c.seed)});
  meta.add({"window", std::to_string(c.lo) + ":" + std::to_string(c.hi)});
  meta.add({"T", c.T});
  meta.add({"replicas", static_cast<long long>(c.replicas)});
  meta.add({"snapshots_per_replica", static_cast<long long>(rep.snapshots_per_replica)});
  meta.add({"events", static_cast<long long>(rep.events)});
  meta.add({"contaminated_snapshots", static_cast<long long>(rep.contaminated_snapshots)});
  meta.add({"contamination_fraction", rep.contamination_fraction});
  meta.add({"conservation_violations", static_cast<long long>(rep.conservation_violations)});
  meta.add({"max_stationarity_z", rep.max_stationarity_z});
  meta.add({"timestamp", utc_timestamp()});
  tables.push_back(meta);

  json shared = config_meta(c);
  shared["command"] = "simulate";
  shared["contamination_fraction"] = rep.contamination_fraction;
  for (auto& t : tables) {
    t.meta = shared;
    t.meta["table"] = t.name;
  }
  tables.back().meta["timestamp"] = utc_timestamp();

  emit(tables, o.common.format, o.common.out, true, out);
  return rep.contamination_exceeded || rep.conservation_violations > 0 ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------------------
// dist

struct DistOptions {
  CommonOptions common;
  std::string law;
  double q = 0.5;
  double c = 0.0;
  int d = 1;
  std::string m;
  std::string k;
  std::string n;
  std::string x = "0:10";
  std::optional<int> m1;
  std::optional<int> m2;
};

template <class F>
void for_each_increasing(int d, long lo, long hi, F&& f) {
  if (d < 1 || hi - lo + 1 < d) return;
  std::vector<int> v(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = static_cast<int>(lo) + j;
  for (;;) {
    f(v);
    int j = d - 1;
    while (j >= 0 && v[static_cast<std::size_t>(j)] == hi - (d - 1 - j)) --j;
    if (j < 0) return;
    ++v[static_cast<std::size_t>(j)];
    for (int t = j + 1; t < d; ++t) v[static_cast<std::size_t>(t)] = v[static_cast<std::size_t>(t - 1)] + 1;
  }
}

int run_dist(const DistOptions& o, std::ostream& out) {
  check_q(o.q);
  const AsepParams p(o.q, o.c);
  const auto pol = o.common.policy();
  Table t;
  t.name = "dist";
  double total = 0.0;
  auto require = [](bool ok, const char* opt, const char* msg) {
    if (!ok) throw CLI::ValidationError(opt, msg);
  };
  auto single = [&](const std::string& text, const char* what, long fallback) {
    if (text.empty()) return fallback;
    const Range r = parse_range(text, what);
    require(r.lo == r.hi, what, "expected a single integer");
    return r.lo;
  };

  if (o.law == "N") {
    const Range r = parse_range(o.n.empty() ? "-10:10" : o.n, "n");
    const int m = static_cast<int>(single(o.m, "m", 0));
    t.columns = {"n", "probability", "ratio", "expected_ratio"};
    for (long n = r.lo; n <= r.hi; ++n) {
      const double v = prob_N_at(m, n, p, pol);
      const double prev = prob_N_at(m, n - 1, p, pol);
      t.add({static_cast<long long>(n), v, v / prev, o.q == 0 ? 0.0 : std::pow(o.q, (n + m) - o.c)});
      total += v;
    }
  } else if (o.law == "left-particles" || o.law == "right-holes") {
    const bool left = o.law == "left-particles";
    const std::string& spec = left ? o.k : (o.n.empty() ? o.k : o.n);
    const Range r = parse_range(spec.empty() ? "0:20" : spec, left ? "k" : "n");
    require(r.lo >= 0, left ? "--k" : "--n", "counts must be nonnegative");
    const int m = static_cast<int>(single(o.m, "m", 0));
    t.columns = {left ? "k" : "n", "probability"};
    for (long k = r.lo; k <= r.hi; ++k) {
      const double v = left ? prob_left_particles(m, k, p, pol) : prob_right_holes(m, k, p, pol);
      t.add({static_cast<long long>(k), v});
      total += v;
    }
  } else if (o.law == "window-particles") {
    require(o.m1.has_value() && o.m2.has_value(), "--m1", "window-particles needs --m1 and --m2");
    require(*o.m1 < *o.m2, "--m2", "window-particles needs m1 < m2");
    const int mh = *o.m2 - *o.m1 - 1;
    const Range r = parse_range(o.k.empty() ? "0:" + std::to_string(mh) : o.k, "k");
    require(r.lo >= 0 && r.hi <= mh, "--k", "k must lie in 0..m2-m1-1");
    t.columns = {"k", "probability"};
    for (long k = r.lo; k <= r.hi; ++k) {
      const double v = prob_window_particles(*o.m1, *o.m2, static_cast<int>(k), p);
      t.add({static_cast<long long>(k), v});
      total += v;
    }
  } else if (o.law == "second-class") {
    require(o.d >= 1, "--d", "d must be positive");
    const Range r = parse_range(o.m.empty() ? "-10:10" : o.m, "m");
    t.columns = {"m", "probability"};
    for (long m = r.lo; m <= r.hi; ++m) {
      const double v = prob_second_class_at(static_cast<int>(m), p, o.d);
      t.add({static_cast<long long>(m), v});
      total += v;
    }
  } else if (o.law == "positions") {
    require(o.d >= 1, "--d", "d must be positive");
    const Range r = parse_range(o.m.empty() ? "-5:5" : o.m, "m");
    for (int j = 1; j <= o.d; ++j) t.columns.push_back("m" + std::to_string(j));
    t.columns.emplace_back("probability");
    for_each_increasing(o.d, r.lo, r.hi, [&](const std::vector<int>& v) {
      const double pr = prob_positions(PositionVector(v), p, o.d);
      auto row = key_cells(v);
      row.emplace_back(pr);
      t.add(std::move(row));
      total += pr;
    });
  } else if (o.law == "pi") {
    require(o.d >= 1, "--d", "d must be positive");
    const Range r = parse_range(o.x, "x");
    require(r.lo >= 0, "--x", "labels must be nonnegative");
    for (int j = 1; j <= o.d; ++j) t.columns.push_back("x" + std::to_string(j));
    t.columns.emplace_back("probability");
    for_each_increasing(o.d, r.lo, r.hi, [&](const std::vector<int>& v) {
      const double pr = pi_label(LabelVector(v), QParam(o.q));
      auto row = key_cells(v);
      row.emplace_back(pr);
      t.add(std::move(row));
      total += pr;
    });
  }

  std::vector<Cell> sum_row(t.columns.size());
  sum_row.front() = std::string("sum");
  sum_row[t.columns.size() - (o.law == "N" ? 3 : 1)] = total;
  t.add(std::move(sum_row));

  t.meta = {{"command", "dist"}, {"law", o.law}, {"q", o.q}, {"c", o.c}, {"d", o.d},
            {"truncation", {{"eps", o.common.eps}, {"max_terms", o.common.max_terms}}}};
  emit({t}, o.common.format, o.common.out, false, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ASEP blocking-measure laboratory", "asep_lab"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Check the partition identities numerically or exactly");
  verify->add_option("--identity", vo.identity, "Identity to check")
      ->required()
      ->check(CLI::IsMember({"durfee", "euler", "qbinomial", "jacobi", "all"}));
  verify->add_option("--q", vo.q, "Asymmetry parameter in (0, 1)");
  verify->add_option("--z", vo.z, "Argument z (euler, qbinomial, jacobi)");
  verify->add_option("--n", vo.n, "Durfee rectangle offset");
  verify->add_option("--m", vo.m, "q-binomial order (upper bound in exact mode)")->check(CLI::NonNegativeNumber);
  verify->add_flag("--exact", vo.exact, "Run the exact-integer suites");
  verify->add_option("--N", vo.N, "Exact suites: largest partition size")->check(CLI::Range(0, 60));
  verify->add_option("--K", vo.K, "Exact Euler suite: largest part count")->check(CLI::NonNegativeNumber);
  add_common(verify, vo.common);

  SimulateOptions so;
  auto* simulate = app.add_subcommand("simulate", "Simulate the stationary coupled process");
  simulate->add_option("--q", so.cfg.q, "Asymmetry parameter in (0, 1)")->required();
  simulate->add_option("--c", so.cfg.c, "Blocking-measure offset of xi");
  simulate->add_option("--d", so.cfg.d, "Number of second-class particles")->check(CLI::NonNegativeNumber);
  simulate->add_option("--window", so.window, "Lattice window lo:hi");
  simulate->add_option("--T", so.cfg.T, "Time horizon")->check(CLI::NonNegativeNumber);
  simulate->add_option("--replicas", so.cfg.replicas, "Independent replicas");
  simulate->add_option("--seed", so.cfg.seed, "Run seed");
  simulate->add_option("--dt", so.cfg.sample_dt, "Snapshot interval")->check(CLI::PositiveNumber);
  simulate->add_option("--margin", so.cfg.margin, "Contamination margin in sites")->check(CLI::NonNegativeNumber);
  simulate->add_option("--boundary-eps", so.cfg.boundary_eps, "Window boundary tolerance");
  simulate->add_option("--max-contamination", so.cfg.max_contamination, "Allowed contaminated fraction");
  simulate->add_option("--threads", so.cfg.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  add_common(simulate, so.common);

  DistOptions dopt;
  auto* dist = app.add_subcommand("dist", "Tabulate a closed-form law");
  dist->add_option("--law", dopt.law, "Law to tabulate")
      ->required()
      ->check(CLI::IsMember(
          {"N", "left-particles", "window-particles", "right-holes", "second-class", "positions", "pi"}));
  dist->add_option("--q", dopt.q, "Asymmetry parameter in (0, 1)");
  dist->add_option("--c", dopt.c, "Blocking-measure offset");
  dist->add_option("--d", dopt.d, "Number of second-class particles");
  dist->add_option("--m", dopt.m, "Site m or range lo:hi");
  dist->add_option("--k", dopt.k, "Particle count or range");
  dist->add_option("--n", dopt.n, "Conserved quantity / hole count or range");
  dist->add_option("--x", dopt.x, "Label range for pi");
  dist->add_option("--m1", dopt.m1, "Left end of the finite window");
  dist->add_option("--m2", dopt.m2, "Right end of the finite window");
  add_common(dist, dopt.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (verify->parsed()) {
      if (!vo.q && !vo.exact) throw CLI::RequiredError("--q");
      if (vo.q) check_q(*vo.q);
      return run_verify(vo, out);
    }
    if (simulate->parsed()) return run_simulate(so, out);
    if (dist->parsed()) return run_dist(dopt, out);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WindowTooNarrow& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace asep
