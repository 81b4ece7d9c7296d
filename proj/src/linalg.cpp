#include "qlocal/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

namespace qlocal {

bool is_hermitian(const DenseOperator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

constexpr Eigen::Index kDenseEvdMaxDim = 256;

// Largest |eigenvalue| of a Hermitian matrix by Lanczos with full
// reorthogonalisation. The extreme Ritz values of a Krylov space converge
// first, which is all we need for the operator norm.
double lanczos_extreme_abs(const DenseOperator& a) {
  const Eigen::Index dim = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  const int max_steps = static_cast<int>(std::min<Eigen::Index>(dim, 160));
  CounterRng rng(0x9d2c5680cafef00dULL);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = cplx(rng.next_gaussian(), rng.next_gaussian());
  v.normalize();

  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(max_steps);
  std::vector<double> alpha, beta;

  Eigen::VectorXcd prev = Eigen::VectorXcd::Zero(dim);
  double prev_beta = 0.0;
  double best = 0.0;

  for (int j = 0; j < max_steps; ++j) {
    basis.push_back(v);
    Eigen::VectorXcd w = a * v;
    const double aj = std::real(v.dot(w));
    alpha.push_back(aj);
    w -= aj * v + prev_beta * prev;
    // Two rounds of Gram-Schmidt keep the basis orthogonal to working
    // precision even with clustered eigenvalues.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double bj = w.norm();

    // Ritz values of the tridiagonal section.
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    int arg = 0;
    for (int i = 1; i < m; ++i)
      if (std::abs(es.eigenvalues()(i)) > std::abs(es.eigenvalues()(arg)))
        arg = i;
    best = std::abs(es.eigenvalues()(arg));
    const double residual = bj * std::abs(es.eigenvectors()(m - 1, arg));
    if (residual <= 1e-12 * std::max(1.0, best)) break;
    if (bj <= 1e-14 * scale) break;  // exhausted the invariant subspace

    beta.push_back(bj);
    prev = basis.back();
    prev_beta = bj;
    v = w / bj;
  }
  return best;
}

}  // namespace

double hermitian_norm(const DenseOperator& a) {
  if (!is_hermitian(a))
    throw std::invalid_argument("hermitian_norm: matrix is not Hermitian");
  if (a.rows() <= kDenseEvdMaxDim) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(a,
                                                    Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return lanczos_extreme_abs(a);
}

double operator_norm(const DenseOperator& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == a.cols() && is_hermitian(a)) return hermitian_norm(a);
  // Power iteration on A^dag A for the largest singular value.
  const Eigen::Index dim = a.cols();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  CounterRng rng(0x853c49e6748fea9bULL);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = cplx(rng.next_gaussian(), rng.next_gaussian());
  v.normalize();
  double sigma2 = 0.0;
  const long cap = 10L * dim;
  for (long it = 0; it < cap; ++it) {
    Eigen::VectorXcd w = a.adjoint() * (a * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    w /= next;
    if (std::abs(next - sigma2) <= 1e-9 * std::max(1.0, next) && it > 2) {
      sigma2 = next;
      break;
    }
    sigma2 = next;
    v = w;
  }
  return std::sqrt(sigma2);
}

DenseOperator expi_hermitian(const DenseOperator& h, double theta) {
  if (!is_hermitian(h))
    throw std::invalid_argument("expi_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(cplx(0.0, theta * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseOperator embed(const DenseOperator& gate, const std::vector<int>& qubits,
                    int n) {
  const int g = static_cast<int>(qubits.size());
  if (gate.rows() != (1 << g) || gate.cols() != (1 << g))
    throw std::invalid_argument("embed: gate dimension mismatch");
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator out = DenseOperator::Zero(dim, dim);
  const Eigen::Index rest = dim >> g;
  // Enumerate the non-gate bits once, then fill the gate block.
  std::vector<int> other;
  std::vector<bool> used(n, false);
  for (int q : qubits) used[q] = true;
  for (int q = 0; q < n; ++q)
    if (!used[q]) other.push_back(q);
  for (Eigen::Index o = 0; o < rest; ++o) {
    Eigen::Index base = 0;
    for (std::size_t t = 0; t < other.size(); ++t)
      if ((o >> (other.size() - 1 - t)) & 1)
        base |= Eigen::Index{1} << qubit_bit(n, other[t]);
    for (int r = 0; r < (1 << g); ++r) {
      Eigen::Index row = base;
      for (int t = 0; t < g; ++t)
        if ((r >> (g - 1 - t)) & 1)
          row |= Eigen::Index{1} << qubit_bit(n, qubits[t]);
      for (int c = 0; c < (1 << g); ++c) {
        if (gate(r, c) == cplx(0.0, 0.0)) continue;
        Eigen::Index col = base;
        for (int t = 0; t < g; ++t)
          if ((c >> (g - 1 - t)) & 1)
            col |= Eigen::Index{1} << qubit_bit(n, qubits[t]);
        out(row, col) = gate(r, c);
      }
    }
  }
  return out;
}

DenseOperator random_unitary(int dim, CounterRng& rng) {
  DenseOperator g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  Eigen::HouseholderQR<DenseOperator> qr(g);
  DenseOperator q = qr.householderQ();
  DenseOperator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cplx d = r(i, i);
    const cplx phase = (std::abs(d) == 0.0) ? cplx(1.0) : d / std::abs(d);
    q.col(i) *= phase;
  }
  return q;
}

DenseOperator random_hermitian(int dim, CounterRng& rng) {
  DenseOperator g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = cplx(rng.next_gaussian(), rng.next_gaussian());
  return 0.5 * (g + g.adjoint());
}

}  // namespace qlocal
