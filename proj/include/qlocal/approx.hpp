#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qlocal/pauli.hpp"
#include "qlocal/poly.hpp"
#include "qlocal/types.hpp"

namespace qlocal::approx {

// Parameters of the plus-state construction R = P_{s,a}(H0^m) with
// H0 = (1/n) sum_i |+><+|_i.
struct PlusApproxParams {
  int m = 1;
  int a = 1;
  int s = 1;
};

// The defaults used by the locality/error trade-off: m = ceil(n^{1/4}),
// a = ceil(n^{1/2}), s = ceil(n^{7/8}/sqrt(2)).
PlusApproxParams plus_default_params(long n);

struct PlusApproxResult {
  long n = 0;
  int m = 0, a = 0, s = 0;
  long locality = 0;         // a * m
  double measured_eps = 0.0; // exact ||rho0 - R|| via the H0 eigenbasis
  double eps_bound = 0.0;  // e^{-ms/n} + 2 e^{-(a+1)^2 / 2s}
  double tln_bound = 0.0;        // e^a
};

// Works analytically in the H0 eigenbasis (eigenvalues w/n), so it runs for
// n far beyond any statevector cap.
PlusApproxResult plus_state_approx(long n, const PlusApproxParams& params);

struct ProjectorApproxResult {
  pauli::LocalityCertificate cert;
  double eps_bound = 0.0;  // e^{-ms/r} + 2 e^{-(a+1)^2 / 2s}
  int locality_bound = 0;        // a * m * ell (capped at n)
};

// P_{s,a}(H_avg^m) for H_avg the average of r commuting projectors with a
// unique joint top eigenstate; error measured densely against prod_i H_i.
ProjectorApproxResult projector_product_approx(
    const std::vector<DenseOperator>& projectors, int m, int a, int s);

struct TaylorConjugateResult {
  DenseOperator approx;       // Q O Q^dag with Q the truncated series
  double measured_err = 0.0;  // ||e^{-iH} O e^{iH} - Q O Q^dag||
  double error_bound = 0.0;   // 3 e^{-(d - e||H||)} ||O||
  bool bound_applicable = false;  // d >= e||H||
  int locality_bound = 0;         // min(n, 2 ell d + k)
  int measured_support = 0;       // max Pauli weight of the approximation
  double h_norm = 0.0;
  double o_norm = 0.0;
};

// Conjugation by a truncated Taylor exponential; k is the support size of O
// and ell the declared locality of H.
TaylorConjugateResult taylor_conjugate(const DenseOperator& o, int k,
                                       const DenseOperator& h, int ell, int d);

struct CommutingSpreadResult {
  pauli::LocalityCertificate cert;  // witness = sum_i Q_i R_i Q_i^dag
  int k_bound = 0;                  // 2 ell d + k
  int d = 0;
  double eps_bound = 0.0;           // 3 e^{-(mu-1) Ce n^a kappa^{1-a}} tln(R)
  double tln_error_bound = 0.0;     // (2n)^{k'} (tln(R) + eps')
  double measured_err = 0.0;        // dense error against e^{-iH} R e^{iH}
  double tln_input = 0.0;
};

// Per-term conjugation of R by e^{-i H_{S_i}} with truncated Taylor series
// of degree d = ceil(mu * c_tilde * e * n^alpha * kappa^{1-alpha}).
CommutingSpreadResult commuting_spread(std::span<const pauli::LocalTerm> r,
                                       std::span<const pauli::LocalTerm> h,
                                       int ell, double mu, int kappa,
                                       double alpha, double c_tilde);

struct LedgerInputs {
  double n = 0;
  int p = 0;
  double ell = 1;
  double alpha = 0.5;
  double c_tilde = 1.0;
  double mu = 1.0 + 4.0 / std::numbers::e;
  std::optional<double> kappa;    // defaults to the current k
  std::optional<double> alpha_prime;  // energy observable condition
  std::optional<double> d_const;      // energy observable constant D
  std::optional<int> circuit_depth;   // shallow-circuit tail line
  std::optional<double> circuit_k;    // deviation for the shallow tail
};

struct LedgerEntry {
  std::string id;
  double value = 0.0;
  // ok, vacuous (a probability bound above 1), or flagged (a simplified
  // expression that does not dominate the detailed one at this point).
  std::string status = "ok";
};

struct BoundLedger {
  std::vector<LedgerEntry> entries;

  double value(const std::string& id) const;
  const LedgerEntry& entry(const std::string& id) const;
  std::string to_text() const;  // one "<formula-id> <value> <status>" line each
};

// Pure arithmetic evaluation of every closed-form bound for the given
// parameter point. No simulation involved.
BoundLedger bound_ledger(const LedgerInputs& in);

}  // namespace qlocal::approx
