#pragma once

#include <vector>

#include "qlocal/types.hpp"

namespace qlocal::poly {

// Real polynomial in the monomial basis; coeffs[d] multiplies x^d.
struct Polynomial {
  std::vector<double> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;  // Horner
  void trim(double tol = 0.0);
};

// End-point distribution of an s-step symmetric +-1 walk started at 0:
// p[k] is the probability of finishing at +k or -k. Computed exactly from
// binomial coefficients and emitted as doubles.
struct WalkWeights {
  int s = 0;
  std::vector<double> p;  // indices 0..s
};

// Degree-k Chebyshev polynomial of the first kind, exact coefficients.
Polynomial chebyshev(int k);

// Sum of |monomial coefficients| of T_k, reported as log (the sum itself
// overflows doubles near k ~ 700). The chain bound is log_sum <= k.
double chebyshev_coeff_abs_log_sum(int k);

WalkWeights walk_weights(int s);

// P_{s,a} = sum_{k<=a} p_{s,k} T_k in the monomial basis, combined in exact
// rational arithmetic so the a = s case collapses to x^s exactly.
Polynomial power_poly(int s, int a);

// Clenshaw evaluation of sum_k c_k T_k(x); the numerically safe route on
// [-1, 1] where the monomial form of high-degree combinations cancels badly.
double eval_chebyshev_series(const std::vector<double>& cheb_coeffs, double x);

// P_{s,a} evaluated at x through its Chebyshev form.
double eval_power_poly(const WalkWeights& w, int a, double x);

std::vector<double> apply_poly_spectrum(const Polynomial& p,
                                        const std::vector<double>& eigvals);

// Truncated Taylor series of e^{-iH}: 1 + sum_{m=1}^{d} (-iH)^m / m!.
DenseOperator taylor_exp(const DenseOperator& h, int d);

}  // namespace qlocal::poly
