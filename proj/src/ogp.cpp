#include "qlocal/ogp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "qlocal/rng.hpp"

namespace qlocal::ogp {

GoodSet good_set(const std::vector<double>& cost_values, double mu) {
  GoodSet g;
  g.n = qubits_from_dim(static_cast<Eigen::Index>(cost_values.size()));
  if (g.n > caps::kMaxEnumerationQubits)
    throw std::invalid_argument("good_set: exceeds the enumeration cap");
  g.mu = mu;
  for (std::uint64_t x = 0; x < cost_values.size(); ++x)
    if (cost_values[x] >= mu) g.members.push_back(x);
  return g;
}

bool OgpReport::holds(double nu1, double nu2) const {
  if (!(nu1 < nu2))
    throw std::invalid_argument("OgpReport::holds: requires nu1 < nu2");
  for (double o : overlaps)
    if (o > nu1 && o < nu2) return false;
  return true;
}

OgpReport ogp_scan(const GoodSet& g, std::uint64_t pair_cap,
                   std::uint64_t sample_seed) {
  OgpReport report;
  report.mu = g.mu;
  const std::uint64_t count = g.members.size();
  const double n = g.n;

  // Overlaps are quantised to |n - 2d| / n, so collect distinct |<z1,z2>|.
  std::set<int> attained;
  const std::uint64_t total_pairs = count * count;
  if (total_pairs <= pair_cap) {
    report.pair_count = total_pairs;
    for (std::uint64_t i = 0; i < count; ++i)
      for (std::uint64_t j = i; j < count; ++j) {
        const int d = std::popcount(g.members[i] ^ g.members[j]);
        attained.insert(std::abs(g.n - 2 * d));
      }
  } else {
    report.sampled = true;
    report.pair_count = pair_cap;
    CounterRng rng(sample_seed);
    for (std::uint64_t t = 0; t < pair_cap; ++t) {
      const std::uint64_t i = rng.next_below(count);
      const std::uint64_t j = rng.next_below(count);
      const int d = std::popcount(g.members[i] ^ g.members[j]);
      attained.insert(std::abs(g.n - 2 * d));
    }
  }
  for (int v : attained) report.overlaps.push_back(v / n);

  // Widest open window of [0, 1] free of attained overlaps.
  double best_width = -1.0;
  if (report.overlaps.empty()) {
    report.best_gap = {0.0, 1.0};
  } else {
    std::vector<double> fence;
    fence.push_back(0.0);
    for (double o : report.overlaps) fence.push_back(o);
    fence.push_back(1.0);
    for (std::size_t i = 0; i + 1 < fence.size(); ++i) {
      const double width = fence[i + 1] - fence[i];
      if (width > best_width) {
        best_width = width;
        report.best_gap = {fence[i], fence[i + 1]};
      }
    }
  }
  return report;
}

ClusterPartition cluster_partition(const GoodSet& g, double nu1, double nu2) {
  if (!(0.0 <= nu1 && nu1 < nu2 && nu2 <= 1.0))
    throw std::invalid_argument("cluster_partition: need 0 <= nu1 < nu2 <= 1");
  ClusterPartition part;
  part.nu1_t = (1.0 - nu2) / 2.0;
  part.nu2_t = (1.0 - nu1) / 2.0;
  if (!(2.0 * part.nu1_t < part.nu2_t))
    throw std::invalid_argument(
        "cluster_partition: requires 2*(1-nu2)/2 < (1-nu1)/2");

  const std::size_t count = g.members.size();
  const double intra = part.nu1_t * g.n;
  const double inter = part.nu2_t * g.n;

  // Union-find over edges at distance <= nu1_t * n.
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (std::popcount(g.members[i] ^ g.members[j]) <= intra)
        parent[find(i)] = find(j);

  std::vector<std::size_t> roots;
  std::vector<int> cluster_of(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      part.clusters.emplace_back();
      it = roots.end() - 1;
    }
    cluster_of[i] = static_cast<int>(it - roots.begin());
    part.clusters[static_cast<std::size_t>(cluster_of[i])].push_back(
        g.members[i]);
  }

  // Post-hoc check of both distance conditions.
  part.valid = true;
  for (std::size_t i = 0; i < count && part.valid; ++i)
    for (std::size_t j = i + 1; j < count; ++j) {
      const int d = std::popcount(g.members[i] ^ g.members[j]);
      if (cluster_of[i] == cluster_of[j] ? d > intra : d < inter) {
        part.valid = false;
        break;
      }
    }
  return part;
}

ClusterWeights cluster_weights(const sim::StateVector& s,
                               const ClusterPartition& part,
                               std::optional<double> cert_eps) {
  ClusterWeights out;
  const std::uint64_t full = (std::uint64_t{1} << s.n) - 1;

  // Index membership for the flip pairing.
  std::vector<int> cluster_of(std::size_t{1} << s.n, -1);
  for (std::size_t c = 0; c < part.clusters.size(); ++c)
    for (std::uint64_t x : part.clusters[c])
      cluster_of[x] = static_cast<int>(c);

  out.weights.assign(part.clusters.size(), 0.0);
  for (std::size_t c = 0; c < part.clusters.size(); ++c)
    for (std::uint64_t x : part.clusters[c])
      out.weights[c] += std::norm(s.amps(static_cast<Eigen::Index>(x)));
  out.good_mass = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);

  if (!out.weights.empty())
    out.dominant = static_cast<int>(
        std::max_element(out.weights.begin(), out.weights.end()) -
        out.weights.begin());
  if (cert_eps && out.dominant >= 0)
    out.dominant_carries_mass =
        out.weights[static_cast<std::size_t>(out.dominant)] >=
        out.good_mass - std::sqrt(*cert_eps) - 1e-12;

  // Flip pairing: cluster c maps to the cluster containing the flipped
  // image of its first member, when the partition is flip-closed.
  out.flip_closed = true;
  out.flip_symmetric = true;
  for (std::size_t c = 0; c < part.clusters.size(); ++c) {
    if (part.clusters[c].empty()) continue;
    const int image = cluster_of[part.clusters[c].front() ^ full];
    if (image < 0) {
      out.flip_closed = false;
      break;
    }
    for (std::uint64_t x : part.clusters[c])
      if (cluster_of[x ^ full] != image) {
        out.flip_closed = false;
        break;
      }
    if (!out.flip_closed) break;
    const double residual = std::abs(
        out.weights[c] - out.weights[static_cast<std::size_t>(image)]);
    out.max_flip_residual = std::max(out.max_flip_residual, residual);
  }
  if (!out.flip_closed)
    out.flip_symmetric = false;
  else
    out.flip_symmetric = out.max_flip_residual <= 1e-10;
  return out;
}

OptimiserCheck optimiser_check(const sim::StateVector& s,
                               const std::vector<double>& cost_values,
                               double mu) {
  if (cost_values.size() != static_cast<std::size_t>(s.amps.size()))
    throw std::invalid_argument("optimiser_check: dimension mismatch");
  OptimiserCheck out;
  for (Eigen::Index x = 0; x < s.amps.size(); ++x)
    if (cost_values[static_cast<std::size_t>(x)] >= mu)
      out.good_mass += std::norm(s.amps(x));
  out.delta = 1.0 - out.good_mass;
  return out;
}

std::string report_text(const OgpReport& report, const ClusterPartition& part) {
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "mu %.17g\n", report.mu);
  out += buf;
  std::snprintf(buf, sizeof buf, "pairs %llu\n",
                static_cast<unsigned long long>(report.pair_count));
  out += buf;
  out += report.sampled ? "mode sampled\n" : "mode exhaustive\n";
  out += "overlaps";
  for (double o : report.overlaps) {
    std::snprintf(buf, sizeof buf, " %.17g", o);
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "best_gap %.17g %.17g\n", report.best_gap.lo,
                report.best_gap.hi);
  out += buf;
  std::snprintf(buf, sizeof buf, "nu1_t %.17g\nnu2_t %.17g\nvalid %d\n",
                part.nu1_t, part.nu2_t, part.valid ? 1 : 0);
  out += buf;
  for (std::size_t c = 0; c < part.clusters.size(); ++c) {
    std::snprintf(buf, sizeof buf, "cluster %zu", c);
    out += buf;
    for (std::uint64_t x : part.clusters[c]) {
      std::snprintf(buf, sizeof buf, " %llu",
                    static_cast<unsigned long long>(x));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace qlocal::ogp
