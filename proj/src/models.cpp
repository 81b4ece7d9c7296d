#include "qlocal/models.hpp"

#include <algorithm>
#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "qlocal/rng.hpp"
#include "qlocal/walsh.hpp"

namespace qlocal::models {

namespace {

// Memory guard for the flat coefficient tensor.
constexpr std::uint64_t kMaxTupleCount = 1ULL << 27;

std::uint64_t tuple_count(int n, int q) {
  std::uint64_t count = 1;
  for (int j = 0; j < q; ++j) {
    if (count > kMaxTupleCount / static_cast<std::uint64_t>(n))
      return kMaxTupleCount + 1;
    count *= static_cast<std::uint64_t>(n);
  }
  return count;
}

// Walks all ordered tuples in [n]^q in lexicographic order.
template <typename F>
void for_each_tuple(int n, int q, F&& body) {
  std::vector<int> idx(static_cast<std::size_t>(q), 0);
  std::uint64_t flat = 0;
  while (true) {
    body(flat, idx);
    ++flat;
    int pos = q - 1;
    while (pos >= 0 && ++idx[pos] == n) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

double cost_scale(int n, int q) {
  return std::pow(static_cast<double>(n), -(q + 1) / 2.0);
}

}  // namespace

SpinInstance::SpinInstance(int n, std::uint64_t seed,
                           std::vector<PureComponent> comps)
    : n_(n), seed_(seed), comps_(std::move(comps)) {
  if (n_ < 1) throw std::invalid_argument("SpinInstance: n must be positive");
  for (const auto& comp : comps_) {
    if (comp.q < 1)
      throw std::invalid_argument("SpinInstance: q must be positive");
    if (comp.coeffs.size() != tuple_count(n_, comp.q))
      throw std::invalid_argument("SpinInstance: coefficient count mismatch");
  }
}

const std::vector<CostTerm>& SpinInstance::cost_terms() const {
  if (cost_terms_ready_) return cost_terms_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> agg;
  for (const auto& comp : comps_) {
    const double scale = comp.c * cost_scale(n_, comp.q);
    for_each_tuple(n_, comp.q, [&](std::uint64_t flat,
                                   const std::vector<int>& idx) {
      const double j = comp.coeffs[flat];
      if (j == 0.0) return;
      std::uint32_t index_mask = 0, z_mask = 0;
      for (int i : idx) {
        index_mask |= 1u << i;
        z_mask ^= 1u << i;  // XOR keeps the odd-multiplicity set
      }
      agg[{index_mask, z_mask}] += scale * j;
    });
  }
  cost_terms_.clear();
  cost_terms_.reserve(agg.size());
  for (const auto& [masks, coeff] : agg)
    cost_terms_.push_back({masks.first, masks.second, coeff});
  cost_terms_ready_ = true;
  return cost_terms_;
}

SpinInstance gen_pure_spin(int n, int q, std::uint64_t seed) {
  if (q < 1) throw std::invalid_argument("gen_pure_spin: q must be positive");
  std::vector<double> mixture(static_cast<std::size_t>(q), 0.0);
  mixture.back() = 1.0;
  return gen_mixed_spin(n, mixture, seed);
}

SpinInstance gen_mixed_spin(int n, const std::vector<double>& mixture,
                            std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_mixed_spin: n must be positive");
  CounterRng rng(seed);
  std::vector<PureComponent> comps;
  for (std::size_t j = 0; j < mixture.size(); ++j) {
    if (mixture[j] == 0.0) continue;
    const int q = static_cast<int>(j) + 1;
    const std::uint64_t count = tuple_count(n, q);
    if (count > kMaxTupleCount)
      throw std::length_error("gen_mixed_spin: n^q exceeds the memory cap");
    PureComponent comp;
    comp.q = q;
    comp.c = mixture[j];
    comp.coeffs.resize(count);
    for (auto& coeff : comp.coeffs) coeff = rng.next_gaussian();
    comps.push_back(std::move(comp));
  }
  if (comps.empty())
    throw std::invalid_argument("gen_mixed_spin: no nonzero mixture entry");
  return SpinInstance(n, seed, std::move(comps));
}

double cost_eval(const SpinInstance& inst, const std::vector<int>& z) {
  if (static_cast<int>(z.size()) != inst.n())
    throw std::invalid_argument("cost_eval: assignment length mismatch");
  double total = 0.0;
  for (const auto& comp : inst.components()) {
    double sum = 0.0;
    for_each_tuple(inst.n(), comp.q,
                   [&](std::uint64_t flat, const std::vector<int>& idx) {
                     double prod = comp.coeffs[flat];
                     for (int i : idx) prod *= z[static_cast<std::size_t>(i)];
                     sum += prod;
                   });
    total += comp.c * cost_scale(inst.n(), comp.q) * sum;
  }
  return total;
}

std::vector<double> diag_values(const SpinInstance& inst, Scaling scaling) {
  const int n = inst.n();
  if (n > caps::kMaxStatevectorQubits)
    throw std::invalid_argument("diag_values: exceeds the qubit cap");
  std::vector<double> buf(std::size_t{1} << n, 0.0);
  for (const auto& term : inst.cost_terms())
    buf[reverse_low_bits(term.z_mask, n)] += term.coeff;
  fwht(buf);
  if (scaling == Scaling::kHamiltonian)
    for (auto& v : buf) v *= n;
  return buf;
}

double subset_norm(const SpinInstance& inst, std::uint32_t subset_mask) {
  const int n = inst.n();
  if (n > caps::kMaxEnumerationQubits)
    throw std::invalid_argument("subset_norm: exceeds the enumeration cap");
  std::vector<double> buf(std::size_t{1} << n, 0.0);
  for (const auto& term : inst.cost_terms())
    if (term.index_mask & subset_mask)
      buf[reverse_low_bits(term.z_mask, n)] += term.coeff;
  fwht(buf);
  double best = 0.0;
  for (double v : buf) best = std::max(best, std::abs(v));
  return n * best;
}

SubsetNormReport check_subset_condition(const SpinInstance& inst, double alpha,
                                        double c_tilde, SubsetMode mode,
                                        int sample_count,
                                        std::uint64_t sample_seed) {
  const int n = inst.n();
  SubsetNormReport report;
  report.alpha = alpha;
  report.c_tilde = c_tilde;
  report.mode = mode;

  std::vector<std::uint32_t> subsets;
  if (mode == SubsetMode::kExhaustive) {
    if (n > caps::kMaxExhaustiveSubsetQubits)
      throw std::invalid_argument(
          "check_subset_condition: exhaustive mode capped at n <= 10");
    subsets.reserve((std::size_t{1} << n) - 1);
    for (std::uint32_t s = 1; s < (1u << n); ++s) subsets.push_back(s);
  } else {
    if (sample_count < 1)
      throw std::invalid_argument(
          "check_subset_condition: sampled mode needs a sample count");
    report.sample_count = sample_count;
    report.sample_seed = sample_seed;
    CounterRng rng(sample_seed);
    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int size = 1; size <= n; ++size)
      for (int rep = 0; rep < sample_count; ++rep) {
        for (int i = 0; i < n; ++i) qubits[static_cast<std::size_t>(i)] = i;
        std::uint32_t mask = 0;
        for (int pick = 0; pick < size; ++pick) {
          const auto r = static_cast<std::size_t>(
              rng.next_below(static_cast<std::uint64_t>(n - pick)));
          mask |= 1u << qubits[r];
          std::swap(qubits[r], qubits[static_cast<std::size_t>(n - pick - 1)]);
        }
        subsets.push_back(mask);
      }
  }

  for (std::uint32_t s : subsets) {
    const double norm = subset_norm(inst, s);
    const double size = std::popcount(s);
    const double bound =
        c_tilde * std::pow(n, alpha) * std::pow(size, 1.0 - alpha);
    const double ratio = (bound > 0.0) ? norm / bound : 0.0;
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (norm > bound) report.violations.push_back({s, norm, bound});
  }
  return report;
}

std::string to_text(const SpinInstance& inst) {
  if (!inst.pure())
    throw std::invalid_argument("to_text: only pure instances are persisted");
  const auto& comp = inst.components().front();
  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "spin v1 n=%d q=%d seed=%" PRIu64 "\n",
                inst.n(), comp.q, inst.seed());
  out += buf;
  for_each_tuple(inst.n(), comp.q,
                 [&](std::uint64_t flat, const std::vector<int>& idx) {
                   const double j = comp.coeffs[flat];
                   if (j == 0.0) return;
                   std::string line;
                   for (int i : idx) {
                     std::snprintf(buf, sizeof buf, "%d ", i + 1);
                     line += buf;
                   }
                   std::snprintf(buf, sizeof buf, "%a\n", j);
                   line += buf;
                   out += line;
                 });
  return out;
}

SpinInstance from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("from_text: empty instance file");
  int n = 0, q = 0;
  std::uint64_t seed = 0;
  if (std::sscanf(header.c_str(), "spin v1 n=%d q=%d seed=%" SCNu64, &n, &q,
                  &seed) != 3)
    throw std::invalid_argument("from_text: bad instance header");
  PureComponent comp;
  comp.q = q;
  comp.c = 1.0;
  comp.coeffs.assign(tuple_count(n, q), 0.0);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t flat = 0;
    for (int j = 0; j < q; ++j) {
      int idx = 0;
      if (!(ls >> idx) || idx < 1 || idx > n)
        throw std::invalid_argument("from_text: bad tuple index");
      flat = flat * static_cast<std::uint64_t>(n) +
             static_cast<std::uint64_t>(idx - 1);
    }
    std::string value;
    if (!(ls >> value))
      throw std::invalid_argument("from_text: missing coefficient");
    comp.coeffs[flat] = std::strtod(value.c_str(), nullptr);
  }
  std::vector<PureComponent> comps;
  comps.push_back(std::move(comp));
  return SpinInstance(n, seed, std::move(comps));
}

}  // namespace qlocal::models
