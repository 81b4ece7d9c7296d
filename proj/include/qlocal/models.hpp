#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlocal/types.hpp"

namespace qlocal::models {

enum class Scaling { kCost, kHamiltonian };

// One pure j-spin block: a flat coefficient tensor over all ordered index
// tuples in [n]^q, lexicographic, with a mixture weight c.
struct PureComponent {
  int q = 0;
  double c = 1.0;
  std::vector<double> coeffs;  // size n^q
};

// A diagonal Z-monomial term of the cost function after collapsing repeated
// indices: value at bitstring x is coeff * (-1)^{popcount over z_mask}.
// index_mask is the set of indices that appear in the originating tuples
// (any multiplicity) and drives subset selection; z_mask is the set with
// odd multiplicity and drives the value.
struct CostTerm {
  std::uint32_t index_mask = 0;
  std::uint32_t z_mask = 0;
  double coeff = 0.0;  // cost scaling, normalisation included
};

class SpinInstance {
 public:
  SpinInstance(int n, std::uint64_t seed, std::vector<PureComponent> comps);

  int n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<PureComponent>& components() const { return comps_; }
  bool pure() const { return comps_.size() == 1 && comps_[0].c == 1.0; }

  // Aggregated Z-monomial form of the cost function (cached).
  const std::vector<CostTerm>& cost_terms() const;

 private:
  int n_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<PureComponent> comps_;
  mutable std::vector<CostTerm> cost_terms_;
  mutable bool cost_terms_ready_ = false;
};

// i.i.d. standard Gaussian couplings from a seeded counter stream, drawn in
// lexicographic tuple order. Identical (n, q, seed) reproduce J bit-for-bit.
SpinInstance gen_pure_spin(int n, int q, std::uint64_t seed);

// Mixed model sum_j c_j C^j; component j draws its own block from the same
// stream, blocks in ascending j.
SpinInstance gen_mixed_spin(int n, const std::vector<double>& mixture,
                            std::uint64_t seed);

// Cost function at a spin assignment z in {-1, +1}^n.
double cost_eval(const SpinInstance& inst, const std::vector<int>& z);

// Diagonal of the cost (or Hamiltonian, = n * cost) over all 2^n bitstrings;
// entry x corresponds to the assignment (-1)^x.
std::vector<double> diag_values(const SpinInstance& inst, Scaling scaling);

// ||H_S|| = n * max_z |C_{n,S}(z)|, keeping the tuples whose index set
// intersects S. Exact by enumeration over all 2^n assignments.
double subset_norm(const SpinInstance& inst, std::uint32_t subset_mask);

struct SubsetViolation {
  std::uint32_t subset = 0;
  double norm = 0.0;
  double bound = 0.0;
};

enum class SubsetMode { kExhaustive, kSampled };

struct SubsetNormReport {
  double alpha = 0.0;
  double c_tilde = 0.0;
  SubsetMode mode = SubsetMode::kExhaustive;
  int sample_count = 0;          // sampled mode only
  std::uint64_t sample_seed = 0; // sampled mode only
  std::vector<SubsetViolation> violations;
  double max_ratio = 0.0;
};

// Tests ||H_S|| <= c_tilde * n^alpha * |S|^(1-alpha) over nonempty subsets:
// all of them in exhaustive mode (n <= 10), or `sample_count` subsets drawn
// uniformly per size class otherwise.
SubsetNormReport check_subset_condition(const SpinInstance& inst, double alpha,
                                        double c_tilde, SubsetMode mode,
                                        int sample_count = 0,
                                        std::uint64_t sample_seed = 0);

// Instance file round-trip (pure instances): header line
// "spin v1 n=<n> q=<q> seed=<seed>", then "<i1> ... <iq> <hexfloat>" per
// nonzero coefficient with 1-based indices. Hex floats are lossless.
std::string to_text(const SpinInstance& inst);
SpinInstance from_text(const std::string& text);

}  // namespace qlocal::models
