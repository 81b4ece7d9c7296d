#include "qlocal/approx.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <cstdio>

#include "qlocal/linalg.hpp"

namespace qlocal::approx {

namespace {

double ceil_pow(double base, double exponent) {
  return std::ceil(std::pow(base, exponent));
}

}  // namespace

PlusApproxParams plus_default_params(long n) {
  if (n < 1) throw std::invalid_argument("plus_default_params: n < 1");
  PlusApproxParams p;
  const double nd = static_cast<double>(n);
  p.m = static_cast<int>(ceil_pow(nd, 0.25));
  p.a = static_cast<int>(ceil_pow(nd, 0.5));
  p.s = static_cast<int>(std::ceil(std::pow(nd, 0.875) / std::numbers::sqrt2));
  return p;
}

PlusApproxResult plus_state_approx(long n, const PlusApproxParams& params) {
  if (n < 1) throw std::invalid_argument("plus_state_approx: n < 1");
  if (params.a > params.s)
    throw std::invalid_argument("plus_state_approx: requires a <= s");
  if (params.m < 1 || params.a < 0)
    throw std::invalid_argument("plus_state_approx: bad parameters");

  const auto weights = poly::walk_weights(params.s);
  PlusApproxResult out;
  out.n = n;
  out.m = params.m;
  out.a = params.a;
  out.s = params.s;
  out.locality = static_cast<long>(params.a) * params.m;

  // H0 has eigenvalues w/n; rho0 projects onto the w = n eigenvector. Both
  // sides are diagonal in that basis, so the norm is a max over n+1 levels.
  double worst = std::abs(1.0 - poly::eval_power_poly(weights, params.a, 1.0));
  for (long w = 0; w < n; ++w) {
    const double x = std::pow(static_cast<double>(w) / n, params.m);
    worst = std::max(worst,
                     std::abs(poly::eval_power_poly(weights, params.a, x)));
  }
  out.measured_eps = worst;
  out.eps_bound =
      std::exp(-static_cast<double>(params.m) * params.s / n) +
      2.0 * std::exp(-0.5 * (params.a + 1.0) * (params.a + 1.0) / params.s);
  out.tln_bound = std::exp(static_cast<double>(params.a));
  return out;
}

ProjectorApproxResult projector_product_approx(
    const std::vector<DenseOperator>& projectors, int m, int a, int s) {
  if (projectors.empty())
    throw std::invalid_argument("projector_product_approx: no projectors");
  if (a > s || m < 1)
    throw std::invalid_argument("projector_product_approx: bad parameters");
  const int n = qubits_from_dim(projectors.front().rows());
  if (n > 10)
    throw std::invalid_argument(
        "projector_product_approx: dense verification capped at n <= 10");
  const Eigen::Index dim = projectors.front().rows();

  int ell = 0;
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim)
      throw std::invalid_argument("projector_product_approx: size mismatch");
    if (!is_hermitian(p) || (p * p - p).cwiseAbs().maxCoeff() > 1e-9)
      throw std::invalid_argument(
          "projector_product_approx: input is not a projector");
    std::uint32_t support = 0;
    const pauli::PauliOperator expansion = pauli::decompose(p);
    for (const auto& [key, coeff] : expansion.terms())
      support |= pauli::PauliString::from_key(n, key).support();
    ell = std::max(ell, std::popcount(support));
  }
  for (std::size_t i = 0; i < projectors.size(); ++i)
    for (std::size_t j = i + 1; j < projectors.size(); ++j)
      if ((projectors[i] * projectors[j] - projectors[j] * projectors[i])
              .cwiseAbs()
              .maxCoeff() > 1e-9)
        throw std::invalid_argument(
            "projector_product_approx: projectors do not commute");

  DenseOperator product = DenseOperator::Identity(dim, dim);
  DenseOperator avg = DenseOperator::Zero(dim, dim);
  for (const auto& p : projectors) {
    product = product * p;
    avg += p;
  }
  avg /= static_cast<double>(projectors.size());
  if (std::abs(product.trace().real() - 1.0) > 1e-8 ||
      std::abs(product.trace().imag()) > 1e-8)
    throw std::invalid_argument(
        "projector_product_approx: joint top eigenstate is not unique");

  const auto weights = poly::walk_weights(s);
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(avg);
  Eigen::VectorXcd mapped(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    mapped(i) = poly::eval_power_poly(
        weights, a, std::pow(es.eigenvalues()(i), m));
  const DenseOperator r =
      es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();

  ProjectorApproxResult out;
  out.cert.eps = hermitian_norm(r - product);
  out.cert.witness = pauli::decompose(r);
  out.cert.k = out.cert.witness.max_weight();
  out.cert.tln = 0.0;
  for (const auto& g : pauli::group_by_support(out.cert.witness))
    out.cert.tln += g.norm;
  out.eps_bound =
      std::exp(-static_cast<double>(m) * s / projectors.size()) +
      2.0 * std::exp(-0.5 * (a + 1.0) * (a + 1.0) / s);
  out.locality_bound =
      std::min<long>(n, static_cast<long>(a) * m * std::max(ell, 1));
  return out;
}

TaylorConjugateResult taylor_conjugate(const DenseOperator& o, int k,
                                       const DenseOperator& h, int ell,
                                       int d) {
  const int n = qubits_from_dim(h.rows());
  if (n > 10)
    throw std::invalid_argument(
        "taylor_conjugate: dense verification capped at n <= 10");
  if (o.rows() != h.rows() || o.cols() != h.cols())
    throw std::invalid_argument("taylor_conjugate: dimension mismatch");
  if (!is_hermitian(h))
    throw std::invalid_argument("taylor_conjugate: H is not Hermitian");
  if (d < 0 || ell < 1 || k < 0)
    throw std::invalid_argument("taylor_conjugate: bad parameters");

  TaylorConjugateResult out;
  out.h_norm = hermitian_norm(h);
  out.o_norm = operator_norm(o);
  const DenseOperator q = poly::taylor_exp(h, d);
  out.approx = q * o * q.adjoint();
  const DenseOperator u = expi_hermitian(h, -1.0);
  out.measured_err = operator_norm(u * o * u.adjoint() - out.approx);
  out.bound_applicable = d >= std::numbers::e * out.h_norm;
  out.error_bound =
      3.0 * std::exp(-(d - std::numbers::e * out.h_norm)) * out.o_norm;
  out.locality_bound = std::min(n, 2 * ell * d + k);
  out.measured_support = pauli::max_pauli_weight(out.approx);
  return out;
}

CommutingSpreadResult commuting_spread(std::span<const pauli::LocalTerm> r,
                                       std::span<const pauli::LocalTerm> h,
                                       int ell, double mu, int kappa,
                                       double alpha, double c_tilde) {
  if (r.empty()) throw std::invalid_argument("commuting_spread: empty R");
  const int n = r.front().op.n();
  if (n > 10)
    throw std::invalid_argument(
        "commuting_spread: dense verification capped at n <= 10");
  if (mu <= 1.0) throw std::invalid_argument("commuting_spread: mu must be > 1");
  int k = 0;
  for (const auto& term : r) k = std::max(k, std::popcount(term.support));
  if (kappa < k)
    throw std::invalid_argument("commuting_spread: kappa below the R support");

  const Eigen::Index dim = Eigen::Index{1} << n;
  std::vector<DenseOperator> h_dense;
  h_dense.reserve(h.size());
  DenseOperator h_full = DenseOperator::Zero(dim, dim);
  for (const auto& term : h) {
    h_dense.push_back(pauli::reconstruct(term.op));
    h_full += h_dense.back();
  }
  for (std::size_t i = 0; i < h_dense.size(); ++i)
    for (std::size_t j = i + 1; j < h_dense.size(); ++j)
      if ((h_dense[i] * h_dense[j] - h_dense[j] * h_dense[i])
              .cwiseAbs()
              .maxCoeff() > 1e-9)
        throw std::invalid_argument(
            "commuting_spread: Hamiltonian terms do not commute");

  const double scale =
      c_tilde * std::pow(static_cast<double>(n), alpha) *
      std::pow(static_cast<double>(kappa), 1.0 - alpha);
  const int d = static_cast<int>(std::ceil(mu * std::numbers::e * scale));

  CommutingSpreadResult out;
  out.d = d;
  out.k_bound = 2 * ell * d + k;
  out.tln_input = pauli::tln(r);
  out.eps_bound = 3.0 * std::exp(-(mu - 1.0) * std::numbers::e * scale) *
                  out.tln_input;
  out.tln_error_bound = std::pow(2.0 * n, out.k_bound) *
                        (out.tln_input + out.eps_bound);

  DenseOperator approx = DenseOperator::Zero(dim, dim);
  DenseOperator r_full = DenseOperator::Zero(dim, dim);
  for (const auto& term : r) {
    const DenseOperator r_i = pauli::reconstruct(term.op);
    r_full += r_i;
    const pauli::PauliOperator h_sub = pauli::subset_restrict(h, term.support);
    const DenseOperator q = poly::taylor_exp(
        h_sub.empty() ? DenseOperator::Zero(dim, dim).eval()
                      : pauli::reconstruct(h_sub),
        d);
    approx += q * r_i * q.adjoint();
  }
  const DenseOperator u = expi_hermitian(h_full, -1.0);
  out.measured_err = operator_norm(u * r_full * u.adjoint() - approx);

  out.cert.witness = pauli::decompose(approx);
  out.cert.k = out.cert.witness.max_weight();
  out.cert.eps = out.measured_err;
  out.cert.tln = 0.0;
  for (const auto& g : pauli::group_by_support(out.cert.witness))
    out.cert.tln += g.norm;
  return out;
}

double BoundLedger::value(const std::string& id) const {
  return entry(id).value;
}

const LedgerEntry& BoundLedger::entry(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return e;
  throw std::invalid_argument("BoundLedger: unknown formula id " + id);
}

std::string BoundLedger::to_text() const {
  std::string out;
  char buf[160];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%s %.17g\n", e.id.c_str(), e.value);
    out += buf;
    if (e.status != "ok") {
      std::snprintf(buf, sizeof buf, "%s.status %s\n", e.id.c_str(),
                    e.status.c_str());
      out += buf;
    }
  }
  return out;
}

BoundLedger bound_ledger(const LedgerInputs& in) {
  if (in.n <= 0 || in.p < 0 || in.ell <= 0 || in.c_tilde <= 0 ||
      in.alpha < 0 || in.alpha >= 1)
    throw std::invalid_argument("bound_ledger: bad parameters");
  const double n = in.n;
  const double root8 = std::pow(n, 0.125);
  const double base_eps = 3.0 * std::exp(-root8 / std::numbers::sqrt2);
  const double base_k = 2.0 * std::pow(n, 0.75);
  const double base_tln = 2.0 * std::exp(std::sqrt(n));

  BoundLedger ledger;
  auto put = [&](const std::string& id, double v,
                 const std::string& status = "ok") {
    ledger.entries.push_back({id, v, status});
  };
  auto prob_status = [](double v) {
    return v > 1.0 ? std::string("vacuous") : std::string("ok");
  };

  put("plus_approx.k0", base_k);
  put("plus_approx.eps0", base_eps);
  put("plus_approx.tln0", base_tln);

  // Level recursion: k_j, eps_j, tln_j for the dense-evolution layers.
  const double rate = 20.0 * in.ell * in.c_tilde;
  std::vector<double> k_level(static_cast<std::size_t>(in.p) + 1);
  k_level[0] = base_k;
  double eps_sum = 0.0;
  double eps_final = base_eps, tln_final = base_tln, k_final = base_k;
  for (int j = 1; j <= in.p; ++j) {
    const double expo = 1.0 - std::pow(1.0 - in.alpha, j) / 4.0;
    k_level[static_cast<std::size_t>(j)] =
        2.0 * std::pow(rate, j) * std::pow(n, expo);
    eps_sum += std::exp(-4.0 * std::pow(20.0 * in.ell, j - 1) *
                            std::pow(in.c_tilde, j) * std::pow(n, expo) +
                        std::sqrt(n) +
                        2.0 * (j - 1) * std::log(2.0 * n) *
                            k_level[static_cast<std::size_t>(j - 1)]);
    const double eps_j = base_eps + 6.0 * eps_sum;
    const double tln_j =
        2.0 * std::exp(std::sqrt(n) + 2.0 * j * std::log(2.0 * n) *
                                          k_level[static_cast<std::size_t>(j)]);
    char id[64];
    std::snprintf(id, sizeof id, "evolution.k[%d]", j);
    put(id, k_level[static_cast<std::size_t>(j)]);
    std::snprintf(id, sizeof id, "evolution.eps[%d]", j);
    put(id, eps_j);
    std::snprintf(id, sizeof id, "evolution.tln[%d]", j);
    put(id, tln_j);
    k_final = k_level[static_cast<std::size_t>(j)];
    eps_final = eps_j;
    tln_final = tln_j;
  }
  put("evolution.kp", k_final);
  put("evolution.epsp", eps_final);
  put("evolution.tlnp", tln_final);

  // Simplified end-to-end form; flagged where it does not yet dominate the
  // detailed recursion at this parameter point.
  const double c1 = 40.0 * in.ell * in.c_tilde;
  const double kp_simple =
      std::pow(c1, in.p) * std::pow(n, 1.0 - std::pow(1.0 - in.alpha, in.p) / 4.0);
  const double epsp_simple = 4.0 * std::exp(-root8 / std::numbers::sqrt2);
  put("simplified.c1", c1);
  put("simplified.kp", kp_simple,
      k_final > kp_simple ? "flagged" : "ok");
  put("simplified.epsp", epsp_simple,
      eps_final > epsp_simple ? "flagged" : "ok");

  // One spread step applied to the base approximation (C = 2, delta = 1/4).
  {
    const double kprime =
        20.0 * in.ell * in.c_tilde * 2.0 *
        std::pow(n, 1.0 - (1.0 - in.alpha) * 0.25);
    put("spread_step.kprime", kprime);
    put("spread_step.epsprime",
        3.0 * std::exp(-4.0 * in.c_tilde * 2.0 *
                       std::pow(n, 1.0 - (1.0 - in.alpha) * 0.25)) *
                base_tln +
            base_eps);
    put("spread_step.tlnprime",
        std::exp(2.0 * std::log(2.0 * n) * kprime) * base_tln);
  }

  // Taylor-conjugation pair at the canonical parameters kappa, mu.
  {
    const double kappa = in.kappa.value_or(base_k);
    const double scale = in.c_tilde * std::pow(n, in.alpha) *
                         std::pow(kappa, 1.0 - in.alpha);
    const double d = std::ceil(in.mu * std::numbers::e * scale);
    put("taylor_pair.d", d);
    put("taylor_pair.kprime", 2.0 * in.ell * d + kappa);
    put("taylor_pair.eps_rate",
        3.0 * std::exp(-(d - std::numbers::e * scale)));
    put("commuting_step.kprime", 2.0 * in.ell * d + kappa);
    put("commuting_step.eps_rate",
        3.0 * std::exp(-(in.mu - 1.0) * std::numbers::e * scale));
    put("commuting_step.tln_factor",
        std::pow(2.0 * n, 2.0 * in.ell * d + kappa));
  }

  // Hamming-weight concentration of the evolved state.
  const double weight_tail = 128.0 * std::exp(-std::numbers::sqrt2 * root8);
  put("weight_tail.radius", kp_simple);
  put("weight_tail.bound", weight_tail, prob_status(weight_tail));

  if (in.alpha_prime && in.d_const) {
    const double ap = *in.alpha_prime;
    const double radius =
        2.0 * (*in.d_const) * std::pow(c1, in.p * (1.0 - ap)) *
        std::pow(n,
                 1.0 - std::pow(1.0 - in.alpha, in.p) * (1.0 - ap) / 4.0);
    put("energy_tail.radius", radius);
    put("energy_tail.bound", weight_tail, prob_status(weight_tail));
  }

  if (in.circuit_depth && in.circuit_k) {
    const double t = *in.circuit_depth;
    const double k = *in.circuit_k;
    const double window_lo = std::pow(2.0, t) * std::sqrt(n);
    const double window_hi = std::pow(2.0, t) * n;
    const double eps =
        std::pow(2.0, -k * k / (std::pow(2.0, 2 * t + 8) * n));
    const double tail =
        4.0 * std::pow(2.0, -k * k / (std::pow(2.0, 2 * t + 7) * n));
    const bool in_window = k > window_lo && k < window_hi;
    put("circuit_tail.k_lo", window_lo);
    put("circuit_tail.k_hi", window_hi);
    put("circuit_tail.eps", eps, in_window ? prob_status(eps) : "flagged");
    put("circuit_tail.bound", tail, in_window ? prob_status(tail) : "flagged");
  }

  return ledger;
}

}  // namespace qlocal::approx
