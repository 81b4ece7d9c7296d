#include "qlocal/poly.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "qlocal/linalg.hpp"

namespace qlocal::poly {

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

void Polynomial::trim(double tol) {
  while (!coeffs.empty() && std::abs(coeffs.back()) <= tol)
    coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
}

namespace {

// Exact monomial coefficients of T_k from the closed form
// T_k(x) = (k/2) sum_r ((-1)^r / (k-r)) C(k-r, r) (2x)^{k-2r}.
std::vector<mpq_class> chebyshev_exact(int k) {
  if (k < 0) throw std::invalid_argument("chebyshev: negative degree");
  std::vector<mpq_class> c(static_cast<std::size_t>(k) + 1, mpq_class(0));
  if (k == 0) {
    c[0] = 1;
    return c;
  }
  for (int r = 0; r <= k / 2; ++r) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), k - r, r);
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k - 2 * r);
    mpq_class term(mpz_class(k) * binom * pow2, mpz_class(2) * (k - r));
    term.canonicalize();
    if (r % 2) term = -term;
    c[k - 2 * r] = term;
  }
  return c;
}

// 2^s * p_{s,k}, exact.
mpz_class walk_weight_scaled(int s, int k) {
  if (k < 0 || k > s) return 0;
  if ((s - k) % 2 != 0) return 0;
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), s, (s + k) / 2);
  return k == 0 ? binom : 2 * binom;
}

}  // namespace

Polynomial chebyshev(int k) {
  const auto exact = chebyshev_exact(k);
  Polynomial out;
  out.coeffs.resize(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i)
    out.coeffs[i] = exact[i].get_d();
  out.trim();
  return out;
}

double chebyshev_coeff_abs_log_sum(int k) {
  const auto exact = chebyshev_exact(k);
  mpq_class sum(0);
  for (const auto& c : exact) sum += abs(c);
  // log of a rational via mpz logs to stay in range
  const mpz_class num = sum.get_num(), den = sum.get_den();
  signed long exp_num = 0, exp_den = 0;
  const double d_num = mpz_get_d_2exp(&exp_num, num.get_mpz_t());
  const double d_den = mpz_get_d_2exp(&exp_den, den.get_mpz_t());
  return std::log(d_num) - std::log(d_den) +
         (exp_num - exp_den) * std::numbers::ln2;
}

WalkWeights walk_weights(int s) {
  if (s < 0) throw std::invalid_argument("walk_weights: negative step count");
  WalkWeights out;
  out.s = s;
  out.p.assign(static_cast<std::size_t>(s) + 1, 0.0);
  if (s == 0) {
    out.p[0] = 1.0;
    return out;
  }
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, s);
  for (int k = s % 2; k <= s; k += 2) {
    mpq_class p(walk_weight_scaled(s, k), denom);
    p.canonicalize();
    out.p[k] = p.get_d();
  }
  return out;
}

Polynomial power_poly(int s, int a) {
  if (a < 0 || a > s)
    throw std::invalid_argument("power_poly: cutoff must satisfy 0 <= a <= s");
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, s);
  std::vector<mpq_class> acc(static_cast<std::size_t>(a) + 1, mpq_class(0));
  for (int k = 0; k <= a; ++k) {
    const mpz_class w = walk_weight_scaled(s, k);
    if (w == 0) continue;
    mpq_class weight(w, denom);
    weight.canonicalize();
    const auto cheb = chebyshev_exact(k);
    for (std::size_t d = 0; d < cheb.size(); ++d) acc[d] += weight * cheb[d];
  }
  Polynomial out;
  out.coeffs.resize(acc.size());
  for (std::size_t d = 0; d < acc.size(); ++d) out.coeffs[d] = acc[d].get_d();
  out.trim();
  return out;
}

double eval_chebyshev_series(const std::vector<double>& cheb_coeffs,
                             double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = cheb_coeffs.size(); j-- > 1;) {
    const double b = cheb_coeffs[j] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b;
  }
  return (cheb_coeffs.empty() ? 0.0 : cheb_coeffs[0]) + x * b1 - b2;
}

double eval_power_poly(const WalkWeights& w, int a, double x) {
  if (a < 0 || a > w.s)
    throw std::invalid_argument("eval_power_poly: cutoff out of range");
  std::vector<double> coeffs(w.p.begin(), w.p.begin() + a + 1);
  return eval_chebyshev_series(coeffs, x);
}

std::vector<double> apply_poly_spectrum(const Polynomial& p,
                                        const std::vector<double>& eigvals) {
  std::vector<double> out;
  out.reserve(eigvals.size());
  for (double x : eigvals) out.push_back(p(x));
  return out;
}

DenseOperator taylor_exp(const DenseOperator& h, int d) {
  if (d < 0) throw std::invalid_argument("taylor_exp: negative degree");
  if (!is_hermitian(h))
    throw std::invalid_argument("taylor_exp: matrix is not Hermitian");
  if (qubits_from_dim(h.rows()) > caps::kMaxDenseQubits)
    throw std::invalid_argument("taylor_exp: exceeds the qubit cap");
  DenseOperator acc = DenseOperator::Identity(h.rows(), h.cols());
  DenseOperator term = acc;
  const DenseOperator mih = cplx(0, -1) * h;
  for (int m = 1; m <= d; ++m) {
    term = term * mih / static_cast<double>(m);
    acc += term;
  }
  return acc;
}

}  // namespace qlocal::poly
