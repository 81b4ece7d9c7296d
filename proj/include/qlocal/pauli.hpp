#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qlocal/types.hpp"

namespace qlocal::pauli {

// Tensor product of single-qubit Paulis, encoded as X/Z bit masks.
// Bit i of a mask refers to qubit i; qubit 0 is the leftmost label letter.
// Letter encoding: I=(x0,z0), X=(x1,z0), Y=(x1,z1), Z=(x0,z1), with the
// standard Hermitian Y, so Hermitian operators have real coefficients.
struct PauliString {
  int n = 0;
  std::uint32_t x_mask = 0;
  std::uint32_t z_mask = 0;

  PauliString() = default;
  PauliString(int n_qubits, std::uint32_t x, std::uint32_t z);

  std::uint32_t support() const { return x_mask | z_mask; }
  int weight() const;
  std::string label() const;  // e.g. "IXZY", qubit 0 leftmost
  static PauliString from_label(const std::string& label);

  // Base-4 label integer; sorts the same way the label string does.
  std::uint64_t key() const;
  static PauliString from_key(int n, std::uint64_t key);

  DenseOperator matrix() const;  // full 2^n x 2^n

  bool operator==(const PauliString&) const = default;
};

// Phase and string of the product lhs * rhs.
std::pair<cplx, PauliString> multiply(const PauliString& lhs,
                                      const PauliString& rhs);

// Sparse linear combination of Pauli strings. Coefficients with magnitude
// below kCoeffPurgeThreshold are purged on insertion. Immutable use after
// construction is the expected pattern; all free operations return values.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(int n_qubits) : n_(n_qubits) {}

  int n() const { return n_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& p, cplx coefficient);
  cplx coeff(const PauliString& p) const;

  // Deterministic label order.
  const std::map<std::uint64_t, cplx>& terms() const { return terms_; }
  PauliString string_at(std::uint64_t key) const;

  bool is_hermitian(double tol = 1e-10) const;
  int max_weight() const;

  PauliOperator weight_filtered(int min_weight, int max_weight) const;

  PauliOperator& operator+=(const PauliOperator& other);
  PauliOperator& operator-=(const PauliOperator& other);
  PauliOperator& operator*=(cplx scale);
  friend PauliOperator operator+(PauliOperator a, const PauliOperator& b) {
    return a += b;
  }
  friend PauliOperator operator-(PauliOperator a, const PauliOperator& b) {
    return a -= b;
  }
  friend PauliOperator operator*(const PauliOperator& a,
                                 const PauliOperator& b);

  static PauliOperator identity(int n_qubits);

  // One term per line: "<label> <re> <im>".
  std::string to_text() const;
  static PauliOperator from_text(const std::string& text);

 private:
  int n_ = 0;
  std::map<std::uint64_t, cplx> terms_;
};

// A term of a local decomposition: an operator with a declared support.
// The operator's Pauli strings must live inside the declared mask.
struct LocalTerm {
  std::uint32_t support = 0;
  PauliOperator op;
};

struct SupportGroup {
  std::uint32_t support = 0;
  PauliOperator op;
  double norm = 0.0;
};

// A (k, eps) locality certificate with its explicit k-local witness.
struct LocalityCertificate {
  int k = 0;
  double eps = 0.0;
  PauliOperator witness;
  double tln = 0.0;  // total local norm of the witness's support grouping
};

// In-place change of basis between a 2^n x 2^n matrix (row-major) and its
// Pauli coefficient tensor. After the forward pass, the entry at flat index
// (r, c) is the coefficient 2^{-n} tr(P M) of the string whose letter on
// qubit q is read from bit (n-1-q) of r and c: I=(0,0), X=(0,1), Y=(1,0),
// Z=(1,1). The string weight is popcount(r | c).
void pauli_coeff_transform(std::vector<cplx>& flat, int n);
void pauli_coeff_inverse(std::vector<cplx>& flat, int n);

// Unique Pauli-basis expansion of a dense operator; inverse of reconstruct.
PauliOperator decompose(const DenseOperator& m);
DenseOperator reconstruct(const PauliOperator& op);

// Canonical (k, eps) witness: keep the terms with support size <= k, report
// the exact operator norm of the dropped remainder.
LocalityCertificate support_truncate(const PauliOperator& op, int k);

// Bulk (k, eps) pairs for a dense operator without materialising witnesses;
// shares one coefficient transform across all requested k.
std::vector<std::pair<int, double>> truncation_profile(
    const DenseOperator& m, const std::vector<int>& ks);

// Largest weight carried by any Pauli coefficient above the threshold.
int max_pauli_weight(const DenseOperator& m, double threshold = 1e-12);

// Sum of the terms whose declared support intersects the subset.
PauliOperator subset_restrict(std::span<const LocalTerm> terms,
                              std::uint32_t subset_mask);

// Groups terms by exact Pauli support; group norms are computed on the
// support subspace, so they are exact for any group size <= kMaxDenseQubits.
std::vector<SupportGroup> group_by_support(const PauliOperator& op);

// Total local norm of the given decomposition (decomposition-dependent).
double tln(std::span<const LocalTerm> terms);

// Norm of an operator restricted to its support qubits (exact, dense).
double term_norm(const PauliOperator& op, std::uint32_t declared_support);

}  // namespace qlocal::pauli
