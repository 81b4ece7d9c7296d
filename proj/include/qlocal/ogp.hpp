#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlocal/sim.hpp"
#include "qlocal/types.hpp"

namespace qlocal::ogp {

// Bitstrings whose cost clears the threshold, by full enumeration.
struct GoodSet {
  int n = 0;
  double mu = 0.0;
  std::vector<std::uint64_t> members;
};

// cost_values[x] is the objective at the assignment (-1)^x.
GoodSet good_set(const std::vector<double>& cost_values, double mu);

struct OverlapWindow {
  double lo = 0.0;
  double hi = 1.0;
};

struct OgpReport {
  double mu = 0.0;
  std::vector<double> overlaps;  // attained |<z1,z2>|/n values, ascending
  bool sampled = false;
  std::uint64_t pair_count = 0;
  OverlapWindow best_gap;  // widest open window free of attained overlaps

  // True exactly when no attained overlap lies in the open window (lo, hi).
  bool holds(double nu1, double nu2) const;
};

// Pair scan over the good set (self-pairs included); falls back to seeded
// pair sampling above the pair cap.
OgpReport ogp_scan(const GoodSet& g, std::uint64_t pair_cap = 10'000'000,
                   std::uint64_t sample_seed = 1);

struct ClusterPartition {
  double nu1_t = 0.0;  // (1 - nu2) / 2, intra-cluster scale
  double nu2_t = 0.0;  // (1 - nu1) / 2, inter-cluster scale
  std::vector<std::vector<std::uint64_t>> clusters;
  bool valid = false;  // both distance conditions verified post hoc
};

// Connected components of the good set at edge threshold nu1_t * n.
// Requires 2 nu1_t < nu2_t; validity of the resulting partition is checked
// explicitly over all intra/inter pairs.
ClusterPartition cluster_partition(const GoodSet& g, double nu1, double nu2);

struct ClusterWeights {
  std::vector<double> weights;  // tr(Pi_cluster psi) per cluster
  double good_mass = 0.0;
  int dominant = -1;
  // With a certificate: the dominant cluster carries >= good_mass - sqrt(eps).
  std::optional<bool> dominant_carries_mass;
  // Pairing of clusters under the global bit flip; weight equality of
  // flip-paired clusters to 1e-10 (meaningful for symmetric states).
  bool flip_closed = false;
  bool flip_symmetric = false;
  double max_flip_residual = 0.0;
};

ClusterWeights cluster_weights(const sim::StateVector& s,
                               const ClusterPartition& part,
                               std::optional<double> cert_eps = std::nullopt);

struct OptimiserCheck {
  double delta = 0.0;      // 1 - Pr[C >= mu]
  double good_mass = 0.0;  // Pr[C >= mu]
};

OptimiserCheck optimiser_check(const sim::StateVector& s,
                               const std::vector<double>& cost_values,
                               double mu);

// Structured text report: key-value lines plus cluster membership lists.
std::string report_text(const OgpReport& report, const ClusterPartition& part);

}  // namespace qlocal::ogp
