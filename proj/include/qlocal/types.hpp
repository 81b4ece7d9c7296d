#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace qlocal {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

namespace caps {
// Size caps chosen so every bundled experiment finishes in minutes on a
// single desktop core. They are limits on what we attempt, not on what the
// formulas mean.
inline constexpr int kMaxStatevectorQubits = 24;
inline constexpr int kMaxDenseQubits = 12;
inline constexpr int kMaxExhaustiveSubsetQubits = 10;
inline constexpr int kMaxEnumerationQubits = 20;
}  // namespace caps

// Coefficients below this magnitude are dropped from sparse Pauli term maps.
inline constexpr double kCoeffPurgeThreshold = 1e-14;

// Qubit 0 is the most significant bit of a basis index. Fixed repo-wide.
inline constexpr int qubit_bit(int n, int qubit) { return n - 1 - qubit; }

inline bool basis_bit(std::uint64_t index, int n, int qubit) {
  return (index >> qubit_bit(n, qubit)) & 1ULL;
}

// Masks elsewhere are qubit-indexed (bit i = qubit i); basis indices put
// qubit 0 at the top bit. Reversal converts between the two layouts.
inline std::uint32_t reverse_low_bits(std::uint32_t mask, int n) {
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1u) out |= 1u << (n - 1 - i);
  return out;
}

inline int qubits_from_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw std::invalid_argument("dimension is not a power of two");
  return n;
}

}  // namespace qlocal
