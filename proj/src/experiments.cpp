#include "qlocal/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "qlocal/approx.hpp"
#include "qlocal/conc.hpp"
#include "qlocal/io.hpp"
#include "qlocal/linalg.hpp"
#include "qlocal/models.hpp"
#include "qlocal/ogp.hpp"
#include "qlocal/pauli.hpp"
#include "qlocal/sim.hpp"

namespace qlocal::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string format_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects data files in memory and renames them into place together, so a
// failed run leaves nothing behind.
class OutputSet {
 public:
  void add(const std::string& name, std::string bytes) {
    entries_.emplace_back(name, std::move(bytes));
  }

  std::vector<std::pair<std::string, std::string>> flush(
      const std::filesystem::path& dir) {
    std::vector<std::pair<std::string, std::string>> hashes;
    for (const auto& [name, bytes] : entries_) {
      io::atomic_write(dir / name, bytes);
      hashes.emplace_back(name, io::content_hash(bytes));
    }
    return hashes;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

class Checks {
 public:
  void add(const std::string& id, double measured, double bound,
           const std::string& status) {
    rows_ += id + "," + format_real(measured) + "," + format_real(bound) +
             "," + status + "\n";
    if (status == "fail") ++failures_;
  }

  void require(const std::string& id, double measured, double bound) {
    add(id, measured, bound, measured <= bound ? "pass" : "fail");
  }

  std::string csv() const { return "formula_id,measured,bound,status\n" + rows_; }
  int failures() const { return failures_; }

 private:
  std::string rows_;
  int failures_ = 0;
};

void parallel_for(int threads, long count, const std::function<void(long)>& body) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        body(i);
    });
  for (auto& t : pool) t.join();
}

// ---- experiment runners ------------------------------------------------

void run_bound_ledger(const ExperimentConfig& c, OutputSet& out, Checks& checks) {
  approx::LedgerInputs in;
  in.n = c.get_real("n");
  in.p = static_cast<int>(c.get_int("p"));
  in.ell = c.get_real("ell");
  in.alpha = c.get_real_or("alpha", 0.5);
  in.c_tilde = c.get_real("c_tilde");
  if (c.has("mu")) in.mu = c.get_real("mu");
  if (c.has("kappa")) in.kappa = c.get_real("kappa");
  if (c.has("alpha_prime")) in.alpha_prime = c.get_real("alpha_prime");
  if (c.has("d_const")) in.d_const = c.get_real("d_const");
  if (c.has("depth")) in.circuit_depth = static_cast<int>(c.get_int("depth"));
  if (c.has("k")) in.circuit_k = c.get_real("k");

  const approx::BoundLedger ledger = approx::bound_ledger(in);
  out.add("ledger.txt", ledger.to_text());
  for (const auto& e : ledger.entries) {
    if (e.status == "vacuous")
      checks.add(e.id, e.value, 1.0, "vacuous");
    else if (e.status == "flagged")
      checks.add(e.id, e.value, e.value, "flagged");
  }
  checks.require("ledger.c1_positive", 0.0, ledger.value("simplified.c1"));
}

void run_plus_approx(const ExperimentConfig& c, OutputSet& out, Checks& checks) {
  const auto ns = c.get_int_list("n_list");
  std::string csv =
      "n,m,a,s,locality,measured_eps,chain_bound,headline_bound,locality_bound\n";
  for (long n : ns) {
    approx::PlusApproxParams params = approx::plus_default_params(n);
    if (c.has("m")) params.m = static_cast<int>(c.get_int("m"));
    if (c.has("a")) params.a = static_cast<int>(c.get_int("a"));
    if (c.has("s")) params.s = static_cast<int>(c.get_int("s"));
    const auto r = approx::plus_state_approx(n, params);
    const double headline =
        3.0 * std::exp(-std::pow(static_cast<double>(n), 0.125) /
                       std::numbers::sqrt2);
    const double locality_bound = 2.0 * std::pow(static_cast<double>(n), 0.75);
    csv += format_real(static_cast<double>(n)) + "," + std::to_string(r.m) +
           "," + std::to_string(r.a) + "," + std::to_string(r.s) + "," +
           std::to_string(r.locality) + "," + format_real(r.measured_eps) +
           "," + format_real(r.eps_bound) + "," + format_real(headline) +
           "," + format_real(locality_bound) + "\n";
    const std::string tag = "[n=" + std::to_string(n) + "]";
    checks.require("plus_approx.chain" + tag, r.measured_eps,
                   r.eps_bound + 1e-10);
    checks.require("plus_approx.eps" + tag, r.measured_eps, headline + 1e-10);
    checks.require("plus_approx.locality" + tag,
                   static_cast<double>(r.locality), locality_bound);
  }
  out.add("plus_approx.csv", csv);
}

void run_subset_norms(const ExperimentConfig& c, OutputSet& out,
                      Checks& checks) {
  const int n = static_cast<int>(c.get_int("n"));
  const int q = static_cast<int>(c.get_int("q"));
  const long instances = c.get_int("instances");
  const std::uint64_t base_seed = c.get_seed();
  const double alpha = c.get_real_or("alpha", 0.5);
  const double c_tilde = c.get_real_or("c_tilde", std::sqrt(6.0));
  const std::string mode_name = c.get_or("mode", "exhaustive");
  const auto mode = mode_name == "sampled" ? models::SubsetMode::kSampled
                                           : models::SubsetMode::kExhaustive;
  const int samples = static_cast<int>(c.get_int_or("samples", 0));
  if (mode == models::SubsetMode::kExhaustive &&
      n > caps::kMaxExhaustiveSubsetQubits)
    throw std::invalid_argument(
        "refused: exhaustive subset enumeration is capped at n <= 10");

  struct Row {
    double max_ratio = 0.0;
    long violations = 0;
  };
  std::vector<Row> rows(static_cast<std::size_t>(instances));
  parallel_for(c.threads, instances, [&](long i) {
    const auto inst = models::gen_pure_spin(n, q, base_seed + static_cast<std::uint64_t>(i));
    const auto rep = models::check_subset_condition(inst, alpha, c_tilde, mode,
                                                    samples, base_seed);
    rows[static_cast<std::size_t>(i)] = {
        rep.max_ratio, static_cast<long>(rep.violations.size())};
  });

  std::string csv = "instance,seed,max_ratio,violating_subsets\n";
  long violating_instances = 0;
  for (long i = 0; i < instances; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    csv += std::to_string(i) + "," +
           std::to_string(base_seed + static_cast<std::uint64_t>(i)) + "," +
           format_real(r.max_ratio) + "," + std::to_string(r.violations) +
           "\n";
    if (r.violations > 0) ++violating_instances;
  }
  out.add("subset_norms.csv", csv);
  out.add("instance_0.spin",
          models::to_text(models::gen_pure_spin(n, q, base_seed)));
  checks.require("subset.violating_instances",
                 static_cast<double>(violating_instances),
                 c.get_real_or("max_violations", 1.0));
}

void run_taylor_spread(const ExperimentConfig& c, OutputSet& out,
                       Checks& checks) {
  const int n = static_cast<int>(c.get_int_or("n", 5));
  if (n > 10)
    throw std::invalid_argument("refused: dense verification cap is n <= 10");
  const long trials = c.get_int("trials");
  const std::uint64_t seed = c.get_seed();
  const int d_max = static_cast<int>(c.get_int_or("d_max", 24));
  const int ell = 2;
  const Eigen::Index dim = Eigen::Index{1} << n;

  std::string csv = "trial,d,h_norm,o_support,measured,bound,support,support_bound\n";
  long bound_violations = 0, support_violations = 0;
  for (long t = 0; t < trials; ++t) {
    CounterRng rng(seed + static_cast<std::uint64_t>(t));
    // 2-local H: a few random two-qubit Hermitian terms, rescaled.
    DenseOperator h = DenseOperator::Zero(dim, dim);
    const int terms = 2 + static_cast<int>(rng.next_below(3));
    for (int j = 0; j < terms; ++j) {
      const int a = static_cast<int>(rng.next_below(n));
      int b = static_cast<int>(rng.next_below(n - 1));
      if (b >= a) ++b;
      h += embed(random_hermitian(4, rng), {a, b}, n);
    }
    const double target = rng.next_uniform(0.3, 1.5);
    h *= target / hermitian_norm(h);

    // O: a Pauli string of weight 1 or 2.
    const int k = 1 + static_cast<int>(rng.next_below(2));
    std::uint32_t x = 0, z = 0;
    for (int j = 0; j < k; ++j) {
      const int qb = static_cast<int>(rng.next_below(n));
      const int letter = 1 + static_cast<int>(rng.next_below(3));
      if (letter == 1 || letter == 2) x |= 1u << qb;
      if (letter == 2 || letter == 3) z |= 1u << qb;
    }
    if (x == 0 && z == 0) z = 1;
    const pauli::PauliString pstr(n, x, z);
    const DenseOperator o = pstr.matrix();

    const int d_lo = static_cast<int>(
        std::ceil(std::numbers::e * hermitian_norm(h)));
    for (int d = d_lo; d <= d_max; ++d) {
      const auto r = approx::taylor_conjugate(o, pstr.weight(), h, ell, d);
      if (r.bound_applicable && r.measured_err > r.error_bound + 1e-12)
        ++bound_violations;
      if (r.measured_support > r.locality_bound) ++support_violations;
      csv += std::to_string(t) + "," + std::to_string(d) + "," +
             format_real(r.h_norm) + "," + std::to_string(pstr.weight()) +
             "," + format_real(r.measured_err) + "," +
             format_real(r.error_bound) + "," +
             std::to_string(r.measured_support) + "," +
             std::to_string(r.locality_bound) + "\n";
    }
  }
  out.add("taylor_spread.csv", csv);
  checks.require("taylor.bound_violations",
                 static_cast<double>(bound_violations), 0.0);
  checks.require("taylor.support_violations",
                 static_cast<double>(support_violations), 0.0);
}

void run_shallow_tails(const ExperimentConfig& c, OutputSet& out,
                       Checks& checks) {
  const int n = static_cast<int>(c.get_int("n"));
  if (n > caps::kMaxDenseQubits)
    throw std::invalid_argument("refused: dense operator cap is n <= 12");
  const int depth = static_cast<int>(c.get_int("depth"));
  const long states = c.get_int("states");
  const std::uint64_t seed = c.get_seed();

  std::string csv =
      "state,k,eps,upper_tail,lower_tail,bound,circuit_bound,circuit_status\n";
  long tail_violations = 0;
  long cone_violations = 0;
  std::vector<int> ks(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) ks[static_cast<std::size_t>(k - 1)] = k;

  for (long i = 0; i < states; ++i) {
    const auto circuit =
        sim::random_brickwork(n, depth, seed + static_cast<std::uint64_t>(i));
    auto [state, cones] = sim::run_circuit(circuit, sim::basis_state(n, 0));
    for (std::uint32_t cone : cones)
      if (std::popcount(cone) > (1 << depth)) ++cone_violations;
    const auto profile =
        pauli::truncation_profile(sim::density_matrix(state), ks);
    for (const auto& [k, eps] : profile) {
      const auto verdict = conc::tail_check(state, k, eps);
      if (!verdict.pass) ++tail_violations;
      const double circuit_bound =
          4.0 * std::pow(2.0, -static_cast<double>(k) * k /
                                   (std::pow(2.0, 2 * depth + 7) * n));
      csv += std::to_string(i) + "," + std::to_string(k) + "," +
             format_real(eps) + "," + format_real(verdict.upper_tail) + "," +
             format_real(verdict.lower_tail) + "," + format_real(verdict.bound) +
             "," + format_real(circuit_bound) + "," +
             (circuit_bound > 1.0 ? "vacuous" : "ok") + "\n";
    }
  }
  out.add("shallow_tails.csv", csv);
  checks.require("shallow.tail_violations",
                 static_cast<double>(tail_violations), 0.0);
  checks.require("shallow.lightcone_violations",
                 static_cast<double>(cone_violations), 0.0);
}

void run_qaoa_conc(const ExperimentConfig& c, OutputSet& out, Checks& checks) {
  const int n = static_cast<int>(c.get_int("n"));
  if (n > caps::kMaxStatevectorQubits)
    throw std::invalid_argument("refused: statevector cap is n <= 24");
  const int q = static_cast<int>(c.get_int("q"));
  const int p = static_cast<int>(c.get_int("p"));
  const long seeds = c.get_int_or("seeds", 1);
  const std::uint64_t base_seed = c.get_seed();
  const double c_tilde = c.get_real_or("c_tilde", std::sqrt(6.0));

  std::string sym_csv = "seed,x_symmetry_residual,hamming_symmetry_residual\n";
  long sym_violations = 0, tail_violations = 0;
  for (long i = 0; i < seeds; ++i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);
    const auto inst = models::gen_pure_spin(n, q, seed);
    const auto sched = sim::random_schedule(p, seed ^ 0x5bf03635ULL);
    const auto state = sim::run_qaoa(inst, sched);
    const std::string tag = std::to_string(i);

    const auto dist = conc::hamming_dist(state);
    out.add("qaoa_hamming_" + tag + ".csv", conc::weight_csv(dist));

    // Energy under the Hamiltonian-scaled instance.
    auto terms = inst.cost_terms();
    for (auto& t : terms) t.coeff *= n;
    conc::EnergyLedgerParams ledger{p, static_cast<double>(q), 0.5, c_tilde};
    const auto energy =
        conc::energy_dist(state, terms, 0.5, c_tilde, ledger);
    out.add("qaoa_energy_" + tag + ".csv",
            conc::energy_csv(energy.dist, c.exact_floats));
    if (energy.concentration && !energy.concentration->vacuous &&
        energy.concentration->measured_tail > energy.concentration->tail_bound)
      checks.add("qaoa.energy_tail[" + tag + "]",
                 energy.concentration->measured_tail,
                 energy.concentration->tail_bound, "fail");

    const double sym = std::abs(sim::global_x_expectation(state));
    double ham_res = 0.0;
    for (int w = 0; w <= n; ++w)
      ham_res = std::max(ham_res,
                         std::abs(dist.probs[static_cast<std::size_t>(w)] -
                                  dist.probs[static_cast<std::size_t>(n - w)]));
    sym_csv += std::to_string(seed) + "," + format_real(1.0 - sym) + "," +
               format_real(ham_res) + "\n";
    if (q % 2 == 0 && (1.0 - sym > 1e-8 || ham_res > 1e-10))
      ++sym_violations;

    if (n <= caps::kMaxDenseQubits) {
      const int k_cert = static_cast<int>(std::ceil(2.0 * std::sqrt(n)));
      const auto profile =
          pauli::truncation_profile(sim::density_matrix(state), {k_cert});
      const auto verdict = conc::tail_check(state, k_cert, profile[0].second);
      if (!verdict.pass) ++tail_violations;
    }
    if (i == 0) out.add("qaoa_state_0.qsv", io::dump_statevector(state));
  }
  out.add("qaoa_symmetry.csv", sym_csv);
  if (q % 2 == 0)
    checks.require("qaoa.symmetry_violations",
                   static_cast<double>(sym_violations), 0.0);
  checks.require("qaoa.tail_violations", static_cast<double>(tail_violations),
                 0.0);
}

std::vector<double> planted_ball_cost(int n, std::uint64_t star, int radius) {
  std::vector<double> cost(std::size_t{1} << n, 0.0);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t x = 0; x < cost.size(); ++x) {
    const int d1 = std::popcount(x ^ star);
    const int d2 = std::popcount(x ^ (star ^ full));
    if (std::min(d1, d2) <= radius) cost[x] = 1.0;
  }
  return cost;
}

void run_ogp_symmetric(const ExperimentConfig& c, OutputSet& out,
                       Checks& checks) {
  const int n = static_cast<int>(c.get_int("n"));
  if (n > caps::kMaxEnumerationQubits)
    throw std::invalid_argument("refused: enumeration cap is n <= 20");
  const std::uint64_t seed = c.get_seed();
  // Radius-1 balls only satisfy the cluster geometry (2 nu1_t < nu2_t with
  // nu2_t <= 1/2) once n >= 10; smaller n uses the antipodal pair.
  const int radius = static_cast<int>(c.get_int_or("radius", n >= 10 ? 1 : 0));
  const double mu = c.get_real_or("mu", 1.0);
  const double nu1 = c.get_real_or("nu1", 0.0);
  const double nu2 = c.get_real_or("nu2", 0.6);
  const std::string state_kind = c.get_or("state", "ball");

  CounterRng rng(seed);
  const std::uint64_t star = rng.next_u64() & ((std::uint64_t{1} << n) - 1);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const auto cost = planted_ball_cost(n, star, radius);
  const auto good = ogp::good_set(cost, mu);
  const auto scan = ogp::ogp_scan(good);
  const auto part = ogp::cluster_partition(good, nu1, nu2);

  sim::StateVector state;
  if (state_kind == "plus") {
    state = sim::all_plus(n);
  } else if (state_kind == "ghz") {
    state = sim::basis_state(n, star);
    state.amps(static_cast<Eigen::Index>(star ^ full)) = 1.0;
    state.amps.normalize();
  } else if (state_kind == "qaoa") {
    state = sim::all_plus(n);
    const auto sched = sim::random_schedule(2, seed ^ 0x6a09e667ULL);
    for (int i = 0; i < sched.p(); ++i) {
      state = sim::diag_evolve(state, cost, sched.gammas[static_cast<std::size_t>(i)]);
      state = sim::mixer_evolve(state, sched.betas[static_cast<std::size_t>(i)]);
    }
  } else {  // ball: uniform superposition over the good set
    state.n = n;
    state.amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    for (std::uint64_t x : good.members)
      state.amps(static_cast<Eigen::Index>(x)) = 1.0;
    state.amps.normalize();
  }

  const auto weights = ogp::cluster_weights(state, part);
  const auto opt = ogp::optimiser_check(state, cost, mu);

  out.add("ogp_report.txt", ogp::report_text(scan, part));
  std::string wcsv = "cluster,weight\n";
  for (std::size_t i = 0; i < weights.weights.size(); ++i)
    wcsv += std::to_string(i) + "," + format_real(weights.weights[i]) + "\n";
  out.add("cluster_weights.csv", wcsv);

  checks.add("ogp.partition_valid", part.valid ? 1.0 : 0.0, 1.0,
             part.valid ? "pass" : "fail");
  checks.require("ogp.flip_residual", weights.max_flip_residual, 1e-10);
  checks.require("ogp.mass_identity",
                 std::abs(opt.delta + opt.good_mass - 1.0), 0.0);

  // The three-point "line" arrangement must be rejected by the validity
  // check: two short hops chain into one component whose diameter breaks
  // the intra-cluster condition.
  {
    std::vector<double> line_cost(std::size_t{1} << n, 0.0);
    const std::uint64_t a = 0;
    const std::uint64_t b = 0b11;
    const std::uint64_t d = 0b1111;
    line_cost[a] = line_cost[b] = line_cost[d] = 1.0;
    const auto line_good = ogp::good_set(line_cost, 1.0);
    const auto line_part = ogp::cluster_partition(line_good, 0.1, 0.6);
    checks.add("ogp.line_counterexample_invalid",
               line_part.valid ? 1.0 : 0.0, 0.0,
               line_part.valid ? "fail" : "pass");
  }
}

void run_markov_conc(const ExperimentConfig& c, OutputSet& out,
                     Checks& checks) {
  const int n = static_cast<int>(c.get_int("n"));
  if (n > caps::kMaxDenseQubits)
    throw std::invalid_argument("refused: dense operator cap is n <= 12");
  const long chains = c.get_int_or("chains", 1);
  const std::uint64_t seed = c.get_seed();
  const double cfac = c.get_real_or("c", 2.0);

  std::string csv = "chain,k,eps,upper_tail,lower_tail,bound,dist_residual\n";
  long violations = 0;
  double worst_residual = 0.0;
  for (long i = 0; i < chains; ++i) {
    CounterRng rng(seed + static_cast<std::uint64_t>(i));
    const double u = rng.next_uniform(0.1, 0.9);
    std::array<double, 2> initial{u, 1.0 - u};
    std::vector<Eigen::Matrix2d> transitions;
    for (int j = 0; j + 1 < n; ++j) {
      Eigen::Matrix2d t;
      const double p0 = rng.next_uniform(0.05, 0.95);
      const double p1 = rng.next_uniform(0.05, 0.95);
      t << p0, 1.0 - p0, 1.0 - p1, p1;
      transitions.push_back(t);
    }
    const auto state = sim::markov_state(initial, transitions);
    const auto probs = sim::markov_distribution(initial, transitions);
    double residual = 0.0;
    for (Eigen::Index x = 0; x < state.amps.size(); ++x)
      residual = std::max(residual,
                          std::abs(std::norm(state.amps(x)) -
                                   probs[static_cast<std::size_t>(x)]));
    worst_residual = std::max(worst_residual, residual);

    const int k = static_cast<int>(std::ceil(cfac * std::sqrt(n)));
    const auto profile =
        pauli::truncation_profile(sim::density_matrix(state), {k});
    const auto verdict = conc::tail_check(state, k, profile[0].second);
    if (!verdict.pass) ++violations;
    csv += std::to_string(i) + "," + std::to_string(k) + "," +
           format_real(profile[0].second) + "," +
           format_real(verdict.upper_tail) + "," +
           format_real(verdict.lower_tail) + "," + format_real(verdict.bound) +
           "," + format_real(residual) + "\n";
  }
  out.add("markov_conc.csv", csv);
  checks.require("markov.distribution_residual", worst_residual, 1e-12);
  checks.require("markov.tail_violations", static_cast<double>(violations),
                 0.0);
}

}  // namespace

std::string ExperimentConfig::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end())
    throw std::invalid_argument("config is missing required key '" + key + "'");
  return it->second;
}

std::string ExperimentConfig::get_or(const std::string& key,
                                     const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

long ExperimentConfig::get_int(const std::string& key) const {
  return std::stol(get(key));
}

long ExperimentConfig::get_int_or(const std::string& key, long fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::stol(it->second);
}

double ExperimentConfig::get_real(const std::string& key) const {
  return std::stod(get(key));
}

double ExperimentConfig::get_real_or(const std::string& key,
                                     double fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : std::stod(it->second);
}

std::uint64_t ExperimentConfig::get_seed(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end())
    throw std::invalid_argument(
        "config must state the seed explicitly (key '" + key + "')");
  return std::stoull(it->second);
}

std::vector<long> ExperimentConfig::get_int_list(const std::string& key) const {
  std::vector<long> out;
  std::istringstream in(get(key));
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(std::stol(item));
  }
  if (out.empty())
    throw std::invalid_argument("config key '" + key + "' lists no values");
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not 'key = value': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "experiment")
      config.kind = value;
    else if (key == "out")
      config.out_dir = value;
    else if (key == "threads")
      config.threads = static_cast<int>(std::stol(value));
    else if (key == "exact_floats")
      config.exact_floats = value == "1" || value == "true";
    else
      config.values[key] = value;
  }
  if (config.kind.empty())
    throw std::invalid_argument(
        "usage error: config does not name an experiment");
  return config;
}

std::string config_text(const ExperimentConfig& config) {
  std::string out = "experiment = " + config.kind + "\n";
  for (const auto& [k, v] : config.values) out += k + " = " + v + "\n";
  out += "threads = " + std::to_string(config.threads) + "\n";
  out += std::string("exact_floats = ") + (config.exact_floats ? "1" : "0") +
         "\n";
  return out;
}

RunResult run(const ExperimentConfig& config) {
  if (config.kind.empty())
    throw std::invalid_argument("usage error: no experiment kind given");
  if (config.out_dir.empty())
    throw std::invalid_argument("usage error: no output directory given");
  std::filesystem::create_directories(config.out_dir);

  const auto start = std::chrono::steady_clock::now();
  OutputSet out;
  Checks checks;
  if (config.kind == "bound-ledger")
    run_bound_ledger(config, out, checks);
  else if (config.kind == "plus-approx")
    run_plus_approx(config, out, checks);
  else if (config.kind == "subset-norms")
    run_subset_norms(config, out, checks);
  else if (config.kind == "taylor-spread")
    run_taylor_spread(config, out, checks);
  else if (config.kind == "shallow-tails")
    run_shallow_tails(config, out, checks);
  else if (config.kind == "qaoa-conc")
    run_qaoa_conc(config, out, checks);
  else if (config.kind == "ogp-symmetric")
    run_ogp_symmetric(config, out, checks);
  else if (config.kind == "markov-conc")
    run_markov_conc(config, out, checks);
  else
    throw std::invalid_argument("unknown experiment kind '" + config.kind +
                                "'");
  out.add("checks.csv", checks.csv());

  const auto hashes = out.flush(config.out_dir);
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  std::string manifest = "qlocal-manifest v1\n";
  manifest += std::string("version ") + kVersion + "\n";
  manifest += "experiment " + config.kind + "\n";
  manifest += "wall_ms " + std::to_string(wall) + "\n";
  manifest += "config-begin\n" + config_text(config) + "config-end\n";
  RunResult result;
  for (const auto& [name, hash] : hashes) {
    manifest += "file " + name + " " + hash + "\n";
    result.files.push_back(config.out_dir / name);
  }
  io::atomic_write(config.out_dir / "manifest.txt", manifest);
  result.manifest = config.out_dir / "manifest.txt";
  result.check_failures = checks.failures();
  return result;
}

Summary report(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.txt";
  if (!std::filesystem::exists(manifest_path))
    throw std::invalid_argument("report: missing manifest in " + dir.string());
  std::istringstream in(io::read_file(manifest_path));
  std::string line;
  std::vector<std::string> files;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word, name, hash;
    if (ls >> word && word == "file" && ls >> name >> hash) {
      const std::string actual = io::content_hash(io::read_file(dir / name));
      if (actual != hash)
        throw std::runtime_error("report: checksum mismatch for " + name);
      files.push_back(name);
    }
  }

  Summary summary;
  for (const auto& name : files) {
    if (name != "checks.csv") continue;
    std::istringstream cs(io::read_file(dir / name));
    std::string row;
    std::getline(cs, row);  // header
    while (std::getline(cs, row)) {
      if (row.empty()) continue;
      ReportRow r;
      std::istringstream rs(row);
      std::string field;
      std::getline(rs, r.formula_id, ',');
      std::getline(rs, field, ',');
      r.measured = std::stod(field);
      std::getline(rs, field, ',');
      r.bound = std::stod(field);
      std::getline(rs, r.status, ',');
      if (r.status == "fail") ++summary.failures;
      if (r.status == "vacuous") ++summary.vacuous;
      summary.rows.push_back(std::move(r));
    }
  }
  return summary;
}

std::string summary_text(const Summary& summary) {
  std::string out = "formula-id | measured | bound | status\n";
  for (const auto& r : summary.rows) {
    out += r.formula_id + " | " + format_real(r.measured) + " | " +
           format_real(r.bound) + " | " + r.status + "\n";
  }
  out += "failures: " + std::to_string(summary.failures) + "\n";
  out += "vacuous: " + std::to_string(summary.vacuous) + "\n";
  return out;
}

}  // namespace qlocal::experiments
