#include "asep/blocking.hpp"
#include "asep/cli.hpp"
#include "asep/coupling.hpp"
#include "asep/error.hpp"
#include "asep/partitions.hpp"
#include "asep/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace asep;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.str())); }

TruncationPolicy policy(double eps, int max_terms) {
  TruncationPolicy p;
  p.eps = eps;
  p.max_terms = max_terms;
  return p;
}

py::dict report_dict(const IdentityReport& r) {
  py::dict d;
  d["identity"] = r.identity;
  d["parameters"] = r.parameters;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["abs_deviation"] = r.abs_deviation;
  d["rel_deviation"] = r.rel_deviation;
  d["lhs_bound"] = r.lhs_bound;
  d["rhs_bound"] = r.rhs_bound;
  d["tolerance"] = r.tolerance;
  d["pass"] = r.pass;
  return d;
}

py::list estimates(const std::vector<Estimate>& v) {
  py::list out;
  for (const auto& e : v) out.append(py::make_tuple(e.mean, e.se));
  return out;
}

}  // namespace

PYBIND11_MODULE(_asep_lab, m) {
  m.doc() = "Blocking measures, second-class particles and partition identities for ASEP.";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<TruncationNotConverged>(m, "TruncationNotConverged", PyExc_RuntimeError);
  py::register_exception<SizeLimit>(m, "SizeLimit", PyExc_ValueError);
  py::register_exception<WindowTooNarrow>(m, "WindowTooNarrow", PyExc_ValueError);
  py::register_exception<LabelOutOfRange>(m, "LabelOutOfRange", PyExc_IndexError);
  py::register_exception<BoundaryContamination>(m, "BoundaryContamination", PyExc_RuntimeError);

  // q-series
  m.def("pochhammer_finite", [](double a, double q, int n) { return pochhammer_finite(a, QParam(q), n); },
        py::arg("a"), py::arg("q"), py::arg("n"));
  m.def(
      "pochhammer_infinite",
      [](double a, double q, double eps, int max_terms) {
        const Bounded b = pochhammer_infinite(a, QParam(q), policy(eps, max_terms));
        return py::make_tuple(b.value, b.rel_bound);
      },
      py::arg("a"), py::arg("q"), py::arg("eps") = 1e-17, py::arg("max_terms") = 100000,
      "Returns (value, relative error bound).");
  m.def("qbinomial", [](int mm, int k, double q) { return qbinomial(mm, k, QParam(q)); }, py::arg("m"), py::arg("k"),
        py::arg("q"));
  m.def(
      "qbinomial_poly",
      [](int mm, int k) {
        py::list out;
        const IntPoly poly = qbinomial_poly(mm, k);
        for (const auto& c : poly.coeffs()) out.append(to_py(c));
        return out;
      },
      py::arg("m"), py::arg("k"), "Exact coefficients of [m k]_q, lowest power first.");
  m.def("q_pascal_check", &q_pascal_check, py::arg("m"), py::arg("k"));

  // partitions
  m.def(
      "enumerate_partitions",
      [](int n) {
        std::vector<std::vector<int>> out;
        for (const auto& p : enumerate_partitions(n)) out.push_back(p.parts());
        return out;
      },
      py::arg("n"));
  m.def("count_bounded", [](int n, int parts, int size) { return to_py(count_bounded(n, parts, size)); },
        py::arg("n"), py::arg("max_parts"), py::arg("max_size"));
  m.def(
      "durfee_decompose",
      [](const std::vector<int>& parts, int n_offset) {
        const DurfeeDecomposition d = durfee_decompose(Partition(parts), n_offset);
        return py::make_tuple(d.k, d.right.parts(), d.below.parts());
      },
      py::arg("parts"), py::arg("n_offset"), "Returns (k, right, below).");
  m.def(
      "window_state_to_partition",
      [](const std::vector<std::uint8_t>& bits, int k) { return window_state_to_partition(bits, k).parts(); },
      py::arg("bits"), py::arg("k"));

  // blocking measure
  m.def("marginal", [](int i, int z, double q, double c) { return marginal(i, z, AsepParams(q, c)); }, py::arg("i"),
        py::arg("z"), py::arg("q"), py::arg("c") = 0.0);
  m.def(
      "sample_blocking",
      [](int lo, int hi, double q, double c, std::uint64_t seed, double eps) {
        Rng rng(seed);
        return sample_blocking(lo, hi, AsepParams(q, c), rng, eps).bits();
      },
      py::arg("lo"), py::arg("hi"), py::arg("q"), py::arg("c") = 0.0, py::arg("seed") = 1,
      py::arg("eps") = kDefaultWindowEps);
  m.def("prob_N", [](long n, double q, double c) { return prob_N(n, AsepParams(q, c)); }, py::arg("n"), py::arg("q"),
        py::arg("c") = 0.0);
  m.def("prob_N_at", [](int mm, long n, double q, double c) { return prob_N_at(mm, n, AsepParams(q, c)); },
        py::arg("m"), py::arg("n"), py::arg("q"), py::arg("c") = 0.0);
  m.def("prob_left_particles",
        [](int mm, long k, double q, double c) { return prob_left_particles(mm, k, AsepParams(q, c)); }, py::arg("m"),
        py::arg("k"), py::arg("q"), py::arg("c") = 0.0);
  m.def("prob_window_particles",
        [](int m1, int m2, int k, double q, double c) { return prob_window_particles(m1, m2, k, AsepParams(q, c)); },
        py::arg("m1"), py::arg("m2"), py::arg("k"), py::arg("q"), py::arg("c") = 0.0);
  m.def("prob_right_holes",
        [](int mm, long n, double q, double c) { return prob_right_holes(mm, n, AsepParams(q, c)); }, py::arg("m"),
        py::arg("n"), py::arg("q"), py::arg("c") = 0.0);
  m.def(
      "brute_force_window_law",
      [](int m1, int m2, double q, double c) { return brute_force_window_law(m1, m2, AsepParams(q, c)).probs; },
      py::arg("m1"), py::arg("m2"), py::arg("q"), py::arg("c") = 0.0);
  m.def(
      "shift_relation_checks",
      [](double q, double c, int mm, long k, double tol) {
        py::list out;
        for (const auto& r : shift_relation_checks(AsepParams(q, c), mm, k, tol).checks) {
          py::dict d;
          d["name"] = r.name;
          d["lhs"] = r.lhs;
          d["rhs"] = r.rhs;
          d["deviation"] = r.deviation;
          d["pass"] = r.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("q"), py::arg("c"), py::arg("m"), py::arg("k"), py::arg("tol") = 1e-10);

  // second-class particles
  m.def("pi_label", [](const std::vector<int>& x, double q) { return pi_label(LabelVector(x), QParam(q)); },
        py::arg("x"), py::arg("q"));
  m.def(
      "sample_pi",
      [](int d, double q, std::uint64_t seed, int n) {
        Rng rng(seed);
        std::vector<std::vector<int>> out;
        out.reserve(static_cast<std::size_t>(std::max(n, 0)));
        for (int i = 0; i < n; ++i) out.push_back(sample_pi(d, QParam(q), rng).values());
        return out;
      },
      py::arg("d"), py::arg("q"), py::arg("seed") = 1, py::arg("n") = 1);
  m.def(
      "pi_detailed_balance_check",
      [](int d, double q, int cap, double tol) {
        const BalanceReport r = pi_detailed_balance_check(d, QParam(q), cap, tol);
        py::dict out;
        out["states"] = r.states;
        out["moves_checked"] = r.moves_checked;
        out["violations"] = r.violations;
        out["max_deviation"] = r.max_deviation;
        out["pass"] = r.pass;
        return out;
      },
      py::arg("d"), py::arg("q"), py::arg("cap"), py::arg("tol") = 1e-12);
  m.def("prob_second_class_at",
        [](int mm, double q, double c, int d) { return prob_second_class_at(mm, AsepParams(q, c), d); }, py::arg("m"),
        py::arg("q"), py::arg("c") = 0.0, py::arg("d") = 1);
  m.def(
      "prob_positions",
      [](const std::vector<int>& sites, double q, double c) {
        return prob_positions(PositionVector(sites), AsepParams(q, c), static_cast<int>(sites.size()));
      },
      py::arg("m"), py::arg("q"), py::arg("c") = 0.0);
  m.def(
      "conditional_xi_given_labels",
      [](const std::vector<int>& sites, const std::vector<int>& labels, double q, double c) {
        return conditional_xi_given_labels(PositionVector(sites), LabelVector(labels), AsepParams(q, c));
      },
      py::arg("m"), py::arg("k"), py::arg("q"), py::arg("c") = 0.0);
  m.def(
      "second_class_positions",
      [](int lo, int hi, const std::vector<std::uint8_t>& bits, const std::vector<int>& labels) {
        return second_class_positions({WindowState(lo, hi, bits), LabelVector(labels)}).values();
      },
      py::arg("lo"), py::arg("hi"), py::arg("bits"), py::arg("labels"));

  m.def(
      "simulate",
      [](double q, double c, int d, int lo, int hi, double T, int replicas, std::uint64_t seed, double sample_dt,
         int margin, double boundary_eps, double max_contamination, int threads) {
        SimulationConfig cfg;
        cfg.q = q;
        cfg.c = c;
        cfg.d = d;
        cfg.lo = lo;
        cfg.hi = hi;
        cfg.T = T;
        cfg.replicas = replicas;
        cfg.seed = seed;
        cfg.sample_dt = sample_dt;
        cfg.margin = margin;
        cfg.boundary_eps = boundary_eps;
        cfg.max_contamination = max_contamination;
        cfg.threads = threads;
        SimulationReport r;
        {
          py::gil_scoped_release release;
          r = simulate_stationary(cfg);
        }
        py::dict out;
        std::vector<int> sites;
        for (int i = lo; i <= hi; ++i) sites.push_back(i);
        out["sites"] = sites;
        out["xi_occupancy"] = estimates(r.xi_occupancy);
        out["eta_occupancy"] = estimates(r.eta_occupancy);
        out["second_class_at"] = estimates(r.second_class_at);
        py::dict pos;
        for (const auto& [k, e] : r.positions) pos[py::tuple(py::cast(k))] = py::make_tuple(e.mean, e.se);
        out["positions"] = pos;
        py::dict labels;
        for (const auto& [k, n] : r.label_counts) labels[py::tuple(py::cast(k))] = n;
        out["label_counts"] = labels;
        out["snapshots_per_replica"] = r.snapshots_per_replica;
        out["total_snapshots"] = r.total_snapshots;
        out["events"] = r.events;
        out["contamination_fraction"] = r.contamination_fraction;
        out["contamination_exceeded"] = r.contamination_exceeded;
        out["conservation_violations"] = r.conservation_violations;
        return out;
      },
      py::arg("q") = 0.5, py::arg("c") = 0.0, py::arg("d") = 1, py::arg("lo") = -25, py::arg("hi") = 25,
      py::arg("T") = 50.0, py::arg("replicas") = 200, py::arg("seed") = 1, py::arg("sample_dt") = 1.0,
      py::arg("margin") = 5, py::arg("boundary_eps") = 1e-6, py::arg("max_contamination") = 1e-3,
      py::arg("threads") = 0);

  // identities
  m.def(
      "verify_durfee",
      [](double q, int n, double tol) { return report_dict(verify_durfee(QParam(q), n, {}, tol)); }, py::arg("q"),
      py::arg("n") = 0, py::arg("tol") = kDefaultIdentityTol);
  m.def(
      "verify_euler",
      [](double q, double z, double tol) { return report_dict(verify_euler(QParam(q), z, {}, tol)); }, py::arg("q"),
      py::arg("z") = 1.0, py::arg("tol") = kDefaultIdentityTol);
  m.def(
      "verify_qbinomial",
      [](double q, double z, int mm, double tol) { return report_dict(verify_qbinomial(QParam(q), z, mm, tol)); },
      py::arg("q"), py::arg("z"), py::arg("m"), py::arg("tol") = kDefaultIdentityTol);
  m.def(
      "verify_jacobi",
      [](double q, double z, double tol) { return report_dict(verify_jacobi(QParam(q), z, {}, tol)); }, py::arg("q"),
      py::arg("z") = 1.0, py::arg("tol") = kDefaultIdentityTol);
  m.def("verify_durfee_exact", &verify_durfee_exact, py::arg("N"), py::arg("n"));
  m.def("verify_euler_exact", &verify_euler_exact, py::arg("N"), py::arg("K"));
  m.def("verify_qbinomial_exact", &verify_qbinomial_exact, py::arg("m"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
