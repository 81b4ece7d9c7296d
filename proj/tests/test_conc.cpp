#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <climits>
#include <cmath>

#include "qlocal/conc.hpp"
#include "qlocal/linalg.hpp"
#include "qlocal/pauli.hpp"

using namespace qlocal;
using namespace qlocal::conc;

namespace {

std::vector<std::uint64_t> weight_class(int n, int lo, int hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    const int w = std::popcount(x);
    if (w >= lo && w <= hi) out.push_back(x);
  }
  return out;
}

std::vector<models::CostTerm> z_field_terms(int n) {
  std::vector<models::CostTerm> terms;
  for (int i = 0; i < n; ++i)
    terms.push_back({1u << i, 1u << i, 1.0});
  return terms;
}

}  // namespace

TEST_CASE("hamming_dist: point mass, plus state, and flip covariance") {
  const auto zeros = hamming_dist(sim::basis_state(4, 0));
  CHECK(zeros.probs[0] == doctest::Approx(1.0));
  CHECK(zeros.median == 0);

  const auto plus2 = hamming_dist(sim::all_plus(2));
  CHECK(plus2.probs[0] == doctest::Approx(0.25));
  CHECK(plus2.probs[1] == doctest::Approx(0.5));
  CHECK(plus2.probs[2] == doctest::Approx(0.25));
  CHECK(plus2.median == 1);

  const auto s = sim::markov_state(
      {0.3, 0.7}, {[] {
         Eigen::Matrix2d t;
         t << 0.8, 0.2, 0.4, 0.6;
         return t;
       }()});
  const auto dist = hamming_dist(s);
  const auto flipped = hamming_dist(sim::apply_global_x(s));
  for (int w = 0; w <= s.n; ++w)
    CHECK(dist.probs[static_cast<std::size_t>(w)] ==
          doctest::Approx(flipped.probs[static_cast<std::size_t>(s.n - w)]));
}

TEST_CASE("median satisfies both one-sided mass conditions") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto inst = models::gen_pure_spin(6, 3, seed);
    const auto s = sim::run_qaoa(inst, sim::random_schedule(2, seed));
    const auto dist = hamming_dist(s);
    double total = 0.0, below = 0.0, above = 0.0;
    for (int w = 0; w <= s.n; ++w)
      total += dist.probs[static_cast<std::size_t>(w)];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    for (int w = 0; w <= dist.median; ++w)
      below += dist.probs[static_cast<std::size_t>(w)];
    for (int w = dist.median; w <= s.n; ++w)
      above += dist.probs[static_cast<std::size_t>(w)];
    CHECK(below >= 0.5 - 1e-12);
    CHECK(above >= 0.5 - 1e-12);
  }
}

TEST_CASE("tail_check: plus-state example and zero-eps certificate") {
  const auto plus2 = sim::all_plus(2);
  const auto v = tail_check(plus2, 1, 0.25);
  CHECK(v.upper_tail == 0.0);  // median 1, Pr[W > 2] = 0
  CHECK(v.bound == doctest::Approx(0.25));
  CHECK(v.pass);

  const auto exact = tail_check(plus2, 2, 0.0);
  CHECK(exact.upper_tail == 0.0);
  CHECK(exact.lower_tail == 0.0);
  CHECK(exact.pass);
}

TEST_CASE("tail_check rejects a dimension-mismatched certificate") {
  pauli::LocalityCertificate cert;
  cert.k = 1;
  cert.witness = pauli::PauliOperator(3);
  cert.witness.add(pauli::PauliString(3, 0, 0), 1.0);
  CHECK_THROWS_AS(tail_check(sim::all_plus(2), cert), std::invalid_argument);
}

TEST_CASE("verify_certificate: truncation certificates check out densely") {
  const auto inst = models::gen_pure_spin(5, 2, 9);
  const auto s = sim::run_qaoa(inst, sim::random_schedule(1, 4));
  const auto op = pauli::decompose(sim::density_matrix(s));
  const auto cert = pauli::support_truncate(op, 2);
  CHECK(verify_certificate(s, cert));
  pauli::LocalityCertificate wrong = cert;
  wrong.eps += 0.1;
  CHECK_FALSE(verify_certificate(s, wrong));
}

TEST_CASE("set_distance: both routes agree and empty sets are infinite") {
  const auto a = weight_class(8, 0, 2);
  const auto b = weight_class(8, 5, 8);
  CHECK(set_distance(a, b, 8) == 3);
  CHECK(set_distance(a, {}, 8) == INT_MAX);
  // singleton scan path
  CHECK(set_distance({0}, {255}, 8) == 8);
}

TEST_CASE("clustering_check: antipodal singletons and distance gate") {
  const auto zeros = sim::basis_state(4, 0);
  const auto v = clustering_check(zeros, {0}, {15}, 2, 0.04);
  CHECK(v.weight_a == doctest::Approx(1.0));
  CHECK(v.weight_b == doctest::Approx(0.0));
  CHECK(v.min_weight <= std::sqrt(0.04) + 1e-12);
  CHECK(v.pass_min);
  CHECK(v.pass_product);

  // GHZ-like state with a full-range certificate: precondition unmeetable.
  sim::StateVector ghz;
  ghz.n = 4;
  ghz.amps = Eigen::VectorXcd::Zero(16);
  ghz.amps(0) = ghz.amps(15) = 1.0 / std::numbers::sqrt2;
  CHECK_THROWS_AS(clustering_check(ghz, {0}, {15}, 4, 0.0),
                  std::invalid_argument);
}

TEST_CASE("clustering_check: plus state across a weight split") {
  const int n = 6;
  const auto plus = sim::all_plus(n);
  const auto op = pauli::decompose(sim::density_matrix(plus));
  const auto cert = pauli::support_truncate(op, 3);
  const auto v = clustering_check(plus, weight_class(n, 0, 0),
                                  weight_class(n, 6, 6), cert.k, cert.eps);
  CHECK(v.min_distance == 6);
  CHECK(v.product == doctest::Approx(std::pow(2.0, -12)));
  CHECK(v.pass_product);  // (1/64)^2 <= eps
  CHECK(v.pass_min);
}

TEST_CASE("energy_dist: zero Hamiltonian and the transverse-field affine map") {
  const auto plus = sim::all_plus(3);
  const auto zero = energy_dist(plus, {}, 0.0, 1.0);
  REQUIRE(zero.dist.energies.size() == 1);
  CHECK(zero.dist.energies[0] == 0.0);
  CHECK(zero.dist.probs[0] == doctest::Approx(1.0));

  // G = sum_i Z_i: energy = n - 2W exactly
  const int n = 5;
  const auto inst = models::gen_pure_spin(n, 2, 10);
  const auto s = sim::run_qaoa(inst, sim::random_schedule(2, 11));
  const auto weights = hamming_dist(s);
  const auto energy = energy_dist(s, z_field_terms(n), 0.0, 1.0);
  for (std::size_t i = 0; i < energy.dist.energies.size(); ++i) {
    const int w = (n - static_cast<int>(std::llround(energy.dist.energies[i]))) / 2;
    CHECK(energy.dist.probs[i] ==
          doctest::Approx(weights.probs[static_cast<std::size_t>(w)])
              .epsilon(1e-12));
  }
  // ||G_S|| = |S| for the Z field: alpha' = 0, D = 1 holds with equality.
  CHECK(diag_subset_norm(z_field_terms(n), n, 0b10110) == doctest::Approx(3.0));
}

TEST_CASE("energy differences are controlled by the subset norm") {
  const int n = 8;
  const auto inst = models::gen_pure_spin(n, 4, 21);
  auto terms = inst.cost_terms();
  for (auto& t : terms) t.coeff *= n;  // Hamiltonian scaling
  const auto values = energy_values(terms, n);

  CounterRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t x = rng.next_below(1u << n);
    const std::uint64_t y = rng.next_below(1u << n);
    if (x == y) continue;
    std::uint32_t s_mask = 0;  // differing positions as a qubit mask
    for (int q = 0; q < n; ++q)
      if (basis_bit(x, n, q) != basis_bit(y, n, q)) s_mask |= 1u << q;
    const double diff = std::abs(values[x] - values[y]);
    CHECK(diff <= 2.0 * diag_subset_norm(terms, n, s_mask) + 1e-9);
  }
}

TEST_CASE("energy_dist attaches the closed-form radius when asked") {
  const int n = 6;
  const auto inst = models::gen_pure_spin(n, 2, 3);
  const auto s = sim::run_qaoa(inst, sim::random_schedule(1, 3));
  auto terms = inst.cost_terms();
  for (auto& t : terms) t.coeff *= n;
  EnergyLedgerParams ledger{1, 2.0, 0.5, std::sqrt(6.0)};
  const auto out = energy_dist(s, terms, 0.5, std::sqrt(6.0), ledger);
  REQUIRE(out.concentration.has_value());
  CHECK(out.concentration->vacuous);  // 128 e^{-sqrt2 n^{1/8}} > 1 here
  CHECK(out.concentration->radius > 0.0);
}

TEST_CASE("csv exports carry header rows") {
  const auto dist = hamming_dist(sim::all_plus(2));
  const std::string w = weight_csv(dist);
  CHECK(w.rfind("w,prob\n", 0) == 0);
  EnergyDistribution e;
  e.energies = {0.5};
  e.probs = {1.0};
  CHECK(energy_csv(e).rfind("energy,prob\n", 0) == 0);
  CHECK(energy_csv(e, true).find("0x1p-1") != std::string::npos);
}
