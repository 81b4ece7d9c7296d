#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qlocal/models.hpp"
#include "qlocal/rng.hpp"
#include "qlocal/types.hpp"

namespace qlocal::sim {

// Exact n-qubit amplitude vector, unit 2-norm. Qubit 0 is the most
// significant bit of the amplitude index.
struct StateVector {
  int n = 0;
  Eigen::VectorXcd amps;
};

// One- or two-qubit unitary on the listed qubits; for two qubits the gate
// matrix basis order is |q_first q_second>.
struct Gate {
  std::vector<int> qubits;
  DenseOperator u;
};

// Layered circuit; within one layer all gate supports must be disjoint.
struct ShallowCircuit {
  int n = 0;
  std::vector<std::vector<Gate>> layers;

  int depth() const { return static_cast<int>(layers.size()); }
};

struct QaoaSchedule {
  std::vector<double> gammas;
  std::vector<double> betas;

  int p() const { return static_cast<int>(gammas.size()); }
};

// Schedules are restricted to a fixed bounded angle range.
inline constexpr double kMaxQaoaAngle = 6.283185307179586;

StateVector product_state(const std::vector<Eigen::Vector2cd>& locals);
StateVector all_plus(int n);
StateVector basis_state(int n, std::uint64_t index);

StateVector apply_gate(const StateVector& s, const Gate& g);

// Runs the circuit and reports, per qubit i, the qubit set that U O_i U^dag
// can touch for any single-qubit O_i (grown layer by layer in application
// order). |cone| <= 2^t for a depth-t circuit.
std::pair<StateVector, std::vector<std::uint32_t>> run_circuit(
    const ShallowCircuit& c, const StateVector& s0);

std::vector<std::uint32_t> lightcones(const ShallowCircuit& c);

// Full 2^n x 2^n unitary of the circuit (small n only; used as an oracle).
DenseOperator circuit_unitary(const ShallowCircuit& c);

// amps[x] *= exp(-i * angle * diag[x]).
StateVector diag_evolve(const StateVector& s, const std::vector<double>& diag,
                        double angle);

// (e^{-i beta X})^{tensor n}.
StateVector mixer_evolve(const StateVector& s, double beta);

// Level-p alternation e^{-i beta_p X..} e^{-i gamma_p H} ... |+>^n with H in
// Hamiltonian scaling.
StateVector run_qaoa(const models::SpinInstance& inst,
                     const QaoaSchedule& sched);

// e^{iH} s for Hermitian H, exact via eigendecomposition.
StateVector dense_evolve(const StateVector& s, const DenseOperator& h);

// Chain-encoded state: amps[x] = sqrt(P(x)) for the Markov distribution
// P(x1) prod_i P(x_i | x_{i-1}). transition[i](a, b) = P(x_{i+1}=b | x_i=a);
// all probabilities must be strictly positive.
StateVector markov_state(const std::array<double, 2>& initial,
                         const std::vector<Eigen::Matrix2d>& transitions);

// Exact chain distribution over all 2^n strings (enumeration oracle).
std::vector<double> markov_distribution(
    const std::array<double, 2>& initial,
    const std::vector<Eigen::Matrix2d>& transitions);

// Brickwork of Haar-random two-qubit gates, seeded.
ShallowCircuit random_brickwork(int n, int depth, std::uint64_t seed);

QaoaSchedule random_schedule(int p, std::uint64_t seed);

StateVector apply_global_x(const StateVector& s);

// <s| X^{tensor n} |s>.
cplx global_x_expectation(const StateVector& s);

DenseOperator density_matrix(const StateVector& s);

}  // namespace qlocal::sim
