#pragma once

// Numeric and exact checks of the Durfee rectangle, Euler, q-binomial and
// Jacobi triple product identities.

#include "asep/qseries.hpp"

#include <string>

namespace asep {

struct IdentityReport {
  std::string identity;
  std::string parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_deviation = 0.0;
  double rel_deviation = 0.0;
  double lhs_bound = 0.0;  // relative truncation bound of lhs
  double rhs_bound = 0.0;  // relative truncation bound of rhs
  double tolerance = 0.0;
  bool pass = false;
};

inline constexpr double kDefaultIdentityTol = 1e-10;

/// Fills deviations and sets pass iff rel deviation <= tol + lhs_bound + rhs_bound.
IdentityReport make_report(std::string identity, std::string parameters, const IdentitySides& sides, double tol);

/// 1/(q;q)_inf against sum_{k >= max(-n,0)} q^{k(n+k)} / ((q;q)_{n+k} (q;q)_k).
IdentityReport verify_durfee(QParam q, int n_offset, const TruncationPolicy& pol = {},
                             double tol = kDefaultIdentityTol);

/// sum_k q^{k(k-1)/2} z^k / (q;q)_k against (-z;q)_inf.
IdentityReport verify_euler(QParam q, double z, const TruncationPolicy& pol = {}, double tol = kDefaultIdentityTol);

/// sum_{k<=m} q^{k(k-1)/2} z^k [m k]_q against (-z;q)_m.
IdentityReport verify_qbinomial(QParam q, double z, int m, double tol = kDefaultIdentityTol);

/// Sum and product sides of the triple product identity.
IdentityReport verify_jacobi(QParam q, double z, const TruncationPolicy& pol = {}, double tol = kDefaultIdentityTol);

/// Every partition of every size <= N decomposes uniquely and reassembles,
/// and p(s) equals the rectangle-sum coefficients for all s <= N.
bool verify_durfee_exact(int N, int n_offset);

/// Coefficients of q^n z^k (n <= N, k <= K) agree between the sum side, the
/// expansion of prod (1 + z q^i), and the distinct-part counts.
bool verify_euler_exact(int N, int K);

/// Coefficients of q^s z^k agree between the sum side, prod_{i<m}(1 + z q^i)
/// and the bounded distinct-part counts.
bool verify_qbinomial_exact(int m);

}  // namespace asep
