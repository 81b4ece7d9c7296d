#include "qlocal/conc.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>

#include "qlocal/linalg.hpp"
#include "qlocal/walsh.hpp"

namespace qlocal::conc {

WeightDistribution hamming_dist(const sim::StateVector& s) {
  WeightDistribution out;
  out.n = s.n;
  out.probs.assign(static_cast<std::size_t>(s.n) + 1, 0.0);
  for (Eigen::Index x = 0; x < s.amps.size(); ++x)
    out.probs[static_cast<std::size_t>(
        std::popcount(static_cast<std::uint64_t>(x)))] +=
        std::norm(s.amps(x));
  double cdf = 0.0;
  out.median = s.n;
  for (int w = 0; w <= s.n; ++w) {
    cdf += out.probs[static_cast<std::size_t>(w)];
    if (cdf >= 0.5) {
      out.median = w;
      break;
    }
  }
  return out;
}

TailVerdict tail_check(const sim::StateVector& s, int k, double eps) {
  if (k < 0 || k > s.n)
    throw std::invalid_argument("tail_check: k out of range");
  const WeightDistribution dist = hamming_dist(s);
  TailVerdict v;
  v.k = k;
  v.eps = eps;
  v.bound = 4.0 * eps * eps;
  for (int w = dist.median + k + 1; w <= s.n; ++w)
    v.upper_tail += dist.probs[static_cast<std::size_t>(w)];
  for (int w = 0; w < dist.median - k; ++w)
    v.lower_tail += dist.probs[static_cast<std::size_t>(w)];
  v.pass = v.upper_tail <= v.bound + 1e-12 && v.lower_tail <= v.bound + 1e-12;
  return v;
}

TailVerdict tail_check(const sim::StateVector& s,
                       const pauli::LocalityCertificate& cert) {
  if (cert.witness.n() != 0 && cert.witness.n() != s.n)
    throw std::invalid_argument("tail_check: certificate dimension mismatch");
  return tail_check(s, cert.k, cert.eps);
}

bool verify_certificate(const sim::StateVector& s,
                        const pauli::LocalityCertificate& cert, double tol) {
  if (cert.witness.n() != s.n) return false;
  if (cert.witness.max_weight() > cert.k) return false;
  const DenseOperator remainder =
      sim::density_matrix(s) - pauli::reconstruct(cert.witness);
  return std::abs(operator_norm(remainder) - cert.eps) <= tol;
}

int set_distance(const std::vector<std::uint64_t>& set_a,
                 const std::vector<std::uint64_t>& set_b, int n) {
  if (set_a.empty() || set_b.empty()) return INT_MAX;
  const std::size_t pair_work = set_a.size() * set_b.size();
  const std::size_t bfs_work =
      (std::size_t{1} << n) * static_cast<std::size_t>(n);
  if (pair_work <= bfs_work) {
    int best = INT_MAX;
    for (std::uint64_t a : set_a)
      for (std::uint64_t b : set_b)
        best = std::min(best, std::popcount(a ^ b));
    return best;
  }
  // Multi-source BFS over the hypercube from set_a.
  std::vector<int> dist(std::size_t{1} << n, -1);
  std::deque<std::uint64_t> queue;
  for (std::uint64_t a : set_a)
    if (dist[a] < 0) {
      dist[a] = 0;
      queue.push_back(a);
    }
  while (!queue.empty()) {
    const std::uint64_t x = queue.front();
    queue.pop_front();
    for (int b = 0; b < n; ++b) {
      const std::uint64_t y = x ^ (1ULL << b);
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  int best = INT_MAX;
  for (std::uint64_t b : set_b) best = std::min(best, dist[b]);
  return best;
}

ClusteringVerdict clustering_check(const sim::StateVector& s,
                                   const std::vector<std::uint64_t>& set_a,
                                   const std::vector<std::uint64_t>& set_b,
                                   int k, double eps) {
  ClusteringVerdict v;
  v.eps = eps;
  v.sqrt_eps = std::sqrt(eps);
  v.min_distance = set_distance(set_a, set_b, s.n);
  if (v.min_distance <= k)
    throw std::invalid_argument(
        "clustering_check: sets are within distance k");
  for (std::uint64_t x : set_a)
    v.weight_a += std::norm(s.amps(static_cast<Eigen::Index>(x)));
  for (std::uint64_t x : set_b)
    v.weight_b += std::norm(s.amps(static_cast<Eigen::Index>(x)));
  v.min_weight = std::min(v.weight_a, v.weight_b);
  v.product = v.weight_a * v.weight_b;
  v.pass_min = v.min_weight <= v.sqrt_eps + 1e-12;
  v.pass_product = v.product <= v.eps + 1e-12;
  return v;
}

std::vector<double> energy_values(const std::vector<models::CostTerm>& terms,
                                  int n) {
  if (n > caps::kMaxStatevectorQubits)
    throw std::invalid_argument("energy_values: exceeds the qubit cap");
  std::vector<double> buf(std::size_t{1} << n, 0.0);
  for (const auto& t : terms)
    buf[reverse_low_bits(t.z_mask, n)] += t.coeff;
  fwht(buf);
  return buf;
}

double diag_subset_norm(const std::vector<models::CostTerm>& terms, int n,
                        std::uint32_t subset_mask) {
  std::vector<double> buf(std::size_t{1} << n, 0.0);
  for (const auto& t : terms)
    if (t.index_mask & subset_mask)
      buf[reverse_low_bits(t.z_mask, n)] += t.coeff;
  fwht(buf);
  double best = 0.0;
  for (double v : buf) best = std::max(best, std::abs(v));
  return best;
}

EnergyDistResult energy_dist(const sim::StateVector& s,
                             const std::vector<models::CostTerm>& terms,
                             double alpha_prime, double d_const,
                             const std::optional<EnergyLedgerParams>& ledger) {
  const auto values = energy_values(terms, s.n);

  // Bin exactly, merging values within 1e-12 of each other.
  std::map<double, double> bins;
  for (Eigen::Index x = 0; x < s.amps.size(); ++x) {
    const double e = values[static_cast<std::size_t>(x)];
    const double p = std::norm(s.amps(x));
    auto it = bins.lower_bound(e - 1e-12);
    if (it != bins.end() && std::abs(it->first - e) <= 1e-12)
      it->second += p;
    else
      bins.emplace_hint(it, e, p);
  }

  EnergyDistResult out;
  for (const auto& [e, p] : bins) {
    out.dist.energies.push_back(e);
    out.dist.probs.push_back(p);
  }
  double cdf = 0.0;
  out.dist.median = out.dist.energies.empty() ? 0.0 : out.dist.energies.back();
  for (std::size_t i = 0; i < out.dist.probs.size(); ++i) {
    cdf += out.dist.probs[i];
    if (cdf >= 0.5) {
      out.dist.median = out.dist.energies[i];
      break;
    }
  }

  if (ledger) {
    EnergyConcentration ec;
    const double c1 = 40.0 * ledger->ell * ledger->c_tilde;
    ec.radius = 2.0 * d_const * std::pow(c1, ledger->p * (1.0 - alpha_prime)) *
                std::pow(static_cast<double>(s.n),
                         1.0 - std::pow(1.0 - ledger->alpha, ledger->p) *
                                   (1.0 - alpha_prime) / 4.0);
    ec.tail_bound =
        128.0 * std::exp(-std::numbers::sqrt2 *
                         std::pow(static_cast<double>(s.n), 0.125));
    ec.vacuous = ec.tail_bound > 1.0;
    for (std::size_t i = 0; i < out.dist.energies.size(); ++i)
      if (std::abs(out.dist.energies[i] - out.dist.median) > ec.radius)
        ec.measured_tail += out.dist.probs[i];
    out.concentration = ec;
  }
  return out;
}

std::string weight_csv(const WeightDistribution& dist) {
  std::string out = "w,prob\n";
  char buf[64];
  for (std::size_t w = 0; w < dist.probs.size(); ++w) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", w, dist.probs[w]);
    out += buf;
  }
  return out;
}

std::string energy_csv(const EnergyDistribution& dist, bool exact_floats) {
  std::string out = "energy,prob\n";
  char buf[96];
  for (std::size_t i = 0; i < dist.energies.size(); ++i) {
    if (exact_floats)
      std::snprintf(buf, sizeof buf, "%a,%a\n", dist.energies[i],
                    dist.probs[i]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", dist.energies[i],
                    dist.probs[i]);
    out += buf;
  }
  return out;
}

}  // namespace qlocal::conc
