#pragma once

#include "qlocal/rng.hpp"
#include "qlocal/types.hpp"

namespace qlocal {

bool is_hermitian(const DenseOperator& a, double tol = 1e-10);

// Operator (spectral) norm of a Hermitian matrix. Exact dense
// eigendecomposition up to dimension 256; seeded Lanczos with full
// reorthogonalisation above that (extreme eigenvalues converge to ~1e-12).
double hermitian_norm(const DenseOperator& a);

// Operator norm of a general matrix. Hermitian inputs dispatch to
// hermitian_norm; otherwise power iteration on A^dag A with tolerance 1e-9
// and an iteration cap of 10 * dim.
double operator_norm(const DenseOperator& a);

// e^{i theta H} for Hermitian H, via eigendecomposition.
DenseOperator expi_hermitian(const DenseOperator& h, double theta);

DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

// Embeds a gate acting on the listed qubits (in that order) into the full
// n-qubit space. Qubit 0 is the most significant index bit.
DenseOperator embed(const DenseOperator& gate, const std::vector<int>& qubits,
                    int n);

// Haar-distributed unitary of the given dimension (QR of a Ginibre matrix
// with phase-fixed R diagonal), drawn from the supplied stream.
DenseOperator random_unitary(int dim, CounterRng& rng);

DenseOperator random_hermitian(int dim, CounterRng& rng);

}  // namespace qlocal
