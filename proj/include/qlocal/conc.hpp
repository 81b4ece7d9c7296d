#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qlocal/models.hpp"
#include "qlocal/pauli.hpp"
#include "qlocal/sim.hpp"
#include "qlocal/types.hpp"

namespace qlocal::conc {

struct WeightDistribution {
  int n = 0;
  std::vector<double> probs;  // index = Hamming weight, size n+1
  int median = 0;             // smallest m with CDF >= 1/2
};

WeightDistribution hamming_dist(const sim::StateVector& s);

struct TailVerdict {
  int k = 0;
  double eps = 0.0;
  double upper_tail = 0.0;  // Pr[W > m + k]
  double lower_tail = 0.0;  // Pr[W < m - k]
  double bound = 0.0;       // 4 eps^2
  bool pass = false;
};

// Exact two-sided median tail check against 4 eps^2. A valid certificate
// makes the bound unconditional; a failure is an implementation bug.
TailVerdict tail_check(const sim::StateVector& s, int k, double eps);
TailVerdict tail_check(const sim::StateVector& s,
                       const pauli::LocalityCertificate& cert);

// Dense re-verification of a certificate against the state's density
// operator: the witness is k-local and eps matches the remainder norm.
bool verify_certificate(const sim::StateVector& s,
                        const pauli::LocalityCertificate& cert,
                        double tol = 1e-8);

struct ClusteringVerdict {
  double weight_a = 0.0;
  double weight_b = 0.0;
  double min_weight = 0.0;
  double product = 0.0;
  double sqrt_eps = 0.0;
  double eps = 0.0;
  int min_distance = 0;  // INT_MAX when either set is empty
  bool pass_min = false;      // min weight <= sqrt(eps) + tol
  bool pass_product = false;  // product <= eps + tol
};

// Requires the two string sets to be more than k apart in Hamming distance;
// distances are computed exactly (pair scan or hypercube BFS).
ClusteringVerdict clustering_check(const sim::StateVector& s,
                                   const std::vector<std::uint64_t>& set_a,
                                   const std::vector<std::uint64_t>& set_b,
                                   int k, double eps);

// Exact Hamming distance between two string sets.
int set_distance(const std::vector<std::uint64_t>& set_a,
                 const std::vector<std::uint64_t>& set_b, int n);

struct EnergyDistribution {
  std::vector<double> energies;  // ascending, merged at 1e-12
  std::vector<double> probs;
  double median = 0.0;
};

// Optional closed-form radius/tail attached to an energy distribution.
struct EnergyConcentration {
  double radius = 0.0;
  double tail_bound = 0.0;
  bool vacuous = false;
  double measured_tail = 0.0;  // Pr[|E - median| > radius]
};

struct EnergyDistResult {
  EnergyDistribution dist;
  std::optional<EnergyConcentration> concentration;
};

struct EnergyLedgerParams {
  int p = 0;
  double ell = 1.0;
  double alpha = 0.5;
  double c_tilde = 1.0;
};

// Exact energy distribution of a diagonal classical Hamiltonian given as
// Z-monomial terms with declared supports. (alpha_prime, D) certify the
// subset-norm growth of G; when ledger parameters are supplied the
// closed-form radius/tail line is evaluated alongside.
EnergyDistResult energy_dist(const sim::StateVector& s,
                             const std::vector<models::CostTerm>& terms,
                             double alpha_prime, double d_const,
                             const std::optional<EnergyLedgerParams>& ledger =
                                 std::nullopt);

// Energies of all basis strings under the term list.
std::vector<double> energy_values(const std::vector<models::CostTerm>& terms,
                                  int n);

// ||G_S|| for the diagonal term list: max_x |sum of terms meeting S|.
double diag_subset_norm(const std::vector<models::CostTerm>& terms, int n,
                        std::uint32_t subset_mask);

// CSV export, header row included.
std::string weight_csv(const WeightDistribution& dist);
std::string energy_csv(const EnergyDistribution& dist, bool exact_floats = false);

}  // namespace qlocal::conc
