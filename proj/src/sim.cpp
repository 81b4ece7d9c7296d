#include "qlocal/sim.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qlocal/linalg.hpp"

namespace qlocal::sim {

namespace {

void check_state(const StateVector& s) {
  if (s.n < 0 || s.n > caps::kMaxStatevectorQubits)
    throw std::invalid_argument("statevector exceeds the qubit cap");
  if (s.amps.size() != (Eigen::Index{1} << s.n))
    throw std::invalid_argument("statevector dimension mismatch");
}

void check_unitary(const DenseOperator& u) {
  const DenseOperator delta =
      u.adjoint() * u - DenseOperator::Identity(u.rows(), u.cols());
  if (delta.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("gate is not unitary");
}

std::uint32_t gate_support(const Gate& g, int n) {
  std::uint32_t mask = 0;
  for (int q : g.qubits) {
    if (q < 0 || q >= n) throw std::invalid_argument("gate qubit out of range");
    if ((mask >> q) & 1u)
      throw std::invalid_argument("gate lists a qubit twice");
    mask |= 1u << q;
  }
  if (g.u.rows() != (1 << g.qubits.size()) || g.u.rows() != g.u.cols())
    throw std::invalid_argument("gate matrix dimension mismatch");
  return mask;
}

}  // namespace

StateVector product_state(const std::vector<Eigen::Vector2cd>& locals) {
  const int n = static_cast<int>(locals.size());
  if (n > caps::kMaxStatevectorQubits)
    throw std::invalid_argument("product_state: exceeds the qubit cap");
  for (const auto& v : locals)
    if (std::abs(v.squaredNorm() - 1.0) > 1e-10)
      throw std::invalid_argument("product_state: local state not normalised");
  StateVector s;
  s.n = n;
  s.amps = Eigen::VectorXcd::Ones(1);
  for (const auto& v : locals) {
    Eigen::VectorXcd next(s.amps.size() * 2);
    for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
      next(2 * i) = s.amps(i) * v(0);
      next(2 * i + 1) = s.amps(i) * v(1);
    }
    s.amps = std::move(next);
  }
  s.amps.normalize();
  return s;
}

StateVector all_plus(int n) {
  const Eigen::Vector2cd plus(1.0 / std::numbers::sqrt2,
                              1.0 / std::numbers::sqrt2);
  return product_state(std::vector<Eigen::Vector2cd>(
      static_cast<std::size_t>(n), plus));
}

StateVector basis_state(int n, std::uint64_t index) {
  StateVector s;
  s.n = n;
  s.amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  s.amps(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

StateVector apply_gate(const StateVector& s, const Gate& g) {
  check_state(s);
  check_unitary(g.u);
  gate_support(g, s.n);
  StateVector out = s;
  if (g.qubits.size() == 1) {
    const Eigen::Index bit = Eigen::Index{1} << qubit_bit(s.n, g.qubits[0]);
    for (Eigen::Index i = 0; i < out.amps.size(); ++i) {
      if (i & bit) continue;
      const cplx a0 = out.amps(i);
      const cplx a1 = out.amps(i | bit);
      out.amps(i) = g.u(0, 0) * a0 + g.u(0, 1) * a1;
      out.amps(i | bit) = g.u(1, 0) * a0 + g.u(1, 1) * a1;
    }
    return out;
  }
  if (g.qubits.size() == 2) {
    const Eigen::Index b0 = Eigen::Index{1} << qubit_bit(s.n, g.qubits[0]);
    const Eigen::Index b1 = Eigen::Index{1} << qubit_bit(s.n, g.qubits[1]);
    for (Eigen::Index i = 0; i < out.amps.size(); ++i) {
      if ((i & b0) || (i & b1)) continue;
      const Eigen::Index idx[4] = {i, i | b1, i | b0, i | b0 | b1};
      cplx in[4], acc[4];
      for (int r = 0; r < 4; ++r) in[r] = out.amps(idx[r]);
      for (int r = 0; r < 4; ++r) {
        acc[r] = cplx(0, 0);
        for (int c = 0; c < 4; ++c) acc[r] += g.u(r, c) * in[c];
      }
      for (int r = 0; r < 4; ++r) out.amps(idx[r]) = acc[r];
    }
    return out;
  }
  throw std::invalid_argument("apply_gate: only 1- and 2-qubit gates");
}

std::vector<std::uint32_t> lightcones(const ShallowCircuit& c) {
  std::vector<std::uint32_t> cones(static_cast<std::size_t>(c.n));
  for (int q = 0; q < c.n; ++q) cones[static_cast<std::size_t>(q)] = 1u << q;
  for (const auto& layer : c.layers) {
    std::uint32_t seen = 0;
    std::vector<std::uint32_t> supports;
    supports.reserve(layer.size());
    for (const auto& g : layer) {
      const std::uint32_t mask = gate_support(g, c.n);
      if (mask & seen)
        throw std::invalid_argument("layer has overlapping gate supports");
      seen |= mask;
      supports.push_back(mask);
    }
    for (auto& cone : cones)
      for (std::uint32_t mask : supports)
        if (cone & mask) cone |= mask;
  }
  return cones;
}

std::pair<StateVector, std::vector<std::uint32_t>> run_circuit(
    const ShallowCircuit& c, const StateVector& s0) {
  check_state(s0);
  if (s0.n != c.n)
    throw std::invalid_argument("run_circuit: qubit count mismatch");
  auto cones = lightcones(c);  // also validates layer disjointness
  StateVector s = s0;
  for (const auto& layer : c.layers)
    for (const auto& g : layer) s = apply_gate(s, g);
  return {std::move(s), std::move(cones)};
}

DenseOperator circuit_unitary(const ShallowCircuit& c) {
  if (c.n > caps::kMaxDenseQubits)
    throw std::invalid_argument("circuit_unitary: exceeds the dense cap");
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  DenseOperator u = DenseOperator::Identity(dim, dim);
  for (const auto& layer : c.layers)
    for (const auto& g : layer) u = embed(g.u, g.qubits, c.n) * u;
  return u;
}

StateVector diag_evolve(const StateVector& s, const std::vector<double>& diag,
                        double angle) {
  check_state(s);
  if (diag.size() != static_cast<std::size_t>(s.amps.size()))
    throw std::invalid_argument("diag_evolve: diagonal length mismatch");
  StateVector out = s;
  for (Eigen::Index i = 0; i < out.amps.size(); ++i)
    out.amps(i) *= std::exp(cplx(0.0, -angle * diag[static_cast<std::size_t>(i)]));
  return out;
}

StateVector mixer_evolve(const StateVector& s, double beta) {
  check_state(s);
  const double c = std::cos(beta);
  const cplx ms(0.0, -std::sin(beta));
  StateVector out = s;
  for (int q = 0; q < s.n; ++q) {
    const Eigen::Index bit = Eigen::Index{1} << qubit_bit(s.n, q);
    for (Eigen::Index i = 0; i < out.amps.size(); ++i) {
      if (i & bit) continue;
      const cplx a0 = out.amps(i);
      const cplx a1 = out.amps(i | bit);
      out.amps(i) = c * a0 + ms * a1;
      out.amps(i | bit) = ms * a0 + c * a1;
    }
  }
  return out;
}

StateVector run_qaoa(const models::SpinInstance& inst,
                     const QaoaSchedule& sched) {
  if (sched.gammas.size() != sched.betas.size())
    throw std::invalid_argument("run_qaoa: schedule length mismatch");
  for (double g : sched.gammas)
    if (std::abs(g) > kMaxQaoaAngle)
      throw std::invalid_argument("run_qaoa: gamma outside the angle range");
  for (double b : sched.betas)
    if (std::abs(b) > kMaxQaoaAngle)
      throw std::invalid_argument("run_qaoa: beta outside the angle range");
  const auto diag = models::diag_values(inst, models::Scaling::kHamiltonian);
  StateVector s = all_plus(inst.n());
  for (int i = 0; i < sched.p(); ++i) {
    s = diag_evolve(s, diag, sched.gammas[static_cast<std::size_t>(i)]);
    s = mixer_evolve(s, sched.betas[static_cast<std::size_t>(i)]);
  }
  return s;
}

StateVector dense_evolve(const StateVector& s, const DenseOperator& h) {
  check_state(s);
  if (s.n > caps::kMaxDenseQubits)
    throw std::invalid_argument("dense_evolve: exceeds the dense cap");
  if (h.rows() != s.amps.size() || h.cols() != s.amps.size())
    throw std::invalid_argument("dense_evolve: dimension mismatch");
  if (!is_hermitian(h))
    throw std::invalid_argument("dense_evolve: Hamiltonian not Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  Eigen::VectorXcd rotated = es.eigenvectors().adjoint() * s.amps;
  for (Eigen::Index i = 0; i < rotated.size(); ++i)
    rotated(i) *= std::exp(cplx(0.0, es.eigenvalues()(i)));
  StateVector out;
  out.n = s.n;
  out.amps = es.eigenvectors() * rotated;
  return out;
}

std::vector<double> markov_distribution(
    const std::array<double, 2>& initial,
    const std::vector<Eigen::Matrix2d>& transitions) {
  const int n = static_cast<int>(transitions.size()) + 1;
  if (n > caps::kMaxStatevectorQubits)
    throw std::invalid_argument("markov chain exceeds the qubit cap");
  for (double p : initial)
    if (!(p > 0.0))
      throw std::invalid_argument("markov chain needs positive probabilities");
  if (std::abs(initial[0] + initial[1] - 1.0) > 1e-10)
    throw std::invalid_argument("markov initial distribution not normalised");
  for (const auto& t : transitions)
    for (int a = 0; a < 2; ++a) {
      if (!(t(a, 0) > 0.0) || !(t(a, 1) > 0.0))
        throw std::invalid_argument(
            "markov chain needs positive probabilities");
      if (std::abs(t(a, 0) + t(a, 1) - 1.0) > 1e-10)
        throw std::invalid_argument("markov transition row not stochastic");
    }
  std::vector<double> probs(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < probs.size(); ++x) {
    double p = initial[basis_bit(x, n, 0) ? 1 : 0];
    for (int i = 1; i < n; ++i) {
      const int prev = basis_bit(x, n, i - 1) ? 1 : 0;
      const int cur = basis_bit(x, n, i) ? 1 : 0;
      p *= transitions[static_cast<std::size_t>(i - 1)](prev, cur);
    }
    probs[x] = p;
  }
  return probs;
}

StateVector markov_state(const std::array<double, 2>& initial,
                         const std::vector<Eigen::Matrix2d>& transitions) {
  const auto probs = markov_distribution(initial, transitions);
  StateVector s;
  s.n = static_cast<int>(transitions.size()) + 1;
  s.amps = Eigen::VectorXcd(static_cast<Eigen::Index>(probs.size()));
  for (std::size_t x = 0; x < probs.size(); ++x)
    s.amps(static_cast<Eigen::Index>(x)) = std::sqrt(probs[x]);
  return s;
}

ShallowCircuit random_brickwork(int n, int depth, std::uint64_t seed) {
  CounterRng rng(seed);
  ShallowCircuit c;
  c.n = n;
  for (int layer = 0; layer < depth; ++layer) {
    std::vector<Gate> gates;
    for (int q = layer % 2; q + 1 < n; q += 2)
      gates.push_back({{q, q + 1}, random_unitary(4, rng)});
    c.layers.push_back(std::move(gates));
  }
  return c;
}

QaoaSchedule random_schedule(int p, std::uint64_t seed) {
  CounterRng rng(seed);
  QaoaSchedule sched;
  for (int i = 0; i < p; ++i) {
    sched.gammas.push_back(rng.next_uniform(-std::numbers::pi, std::numbers::pi));
    sched.betas.push_back(rng.next_uniform(-std::numbers::pi, std::numbers::pi));
  }
  return sched;
}

StateVector apply_global_x(const StateVector& s) {
  check_state(s);
  const Eigen::Index mask = (Eigen::Index{1} << s.n) - 1;
  StateVector out;
  out.n = s.n;
  out.amps = Eigen::VectorXcd(s.amps.size());
  for (Eigen::Index i = 0; i < s.amps.size(); ++i)
    out.amps(i ^ mask) = s.amps(i);
  return out;
}

cplx global_x_expectation(const StateVector& s) {
  check_state(s);
  const Eigen::Index mask = (Eigen::Index{1} << s.n) - 1;
  cplx acc(0, 0);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i)
    acc += std::conj(s.amps(i)) * s.amps(i ^ mask);
  return acc;
}

DenseOperator density_matrix(const StateVector& s) {
  check_state(s);
  if (s.n > caps::kMaxDenseQubits)
    throw std::invalid_argument("density_matrix: exceeds the dense cap");
  return s.amps * s.amps.adjoint();
}

}  // namespace qlocal::sim
