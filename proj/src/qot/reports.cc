#include "qot/reports.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qot/dense_oracle.h"
#include "qot/experiment.h"
#include "qot/qscd.h"

namespace qot {

namespace {

constexpr double kDenseTolerance = 1e-9;

Permutation other_key(Rng& rng, const Permutation& key) {
  Permutation k = sample_involution(rng, key.degree());
  while (k == key) k = sample_involution(rng, key.degree());
  return k;
}

// Random normalized single-register state with a handful of terms.
SparseState random_state(Rng& rng, int n, int terms) {
  std::vector<SparseState::Term> out;
  for (int i = 0; i < terms; ++i) {
    BasisConfig c;
    c.regs[0] = encode(sample_symmetric(rng, n)).value;
    out.push_back({c, Amplitude(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5)});
  }
  return SparseState::from_terms(RegisterLayout{false, 1, n}, std::move(out)).normalized();
}

Eigen::VectorXcd to_dense(const SparseState& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(factorial(s.layout().n)));
  for (const auto& t : s.terms()) v(static_cast<Eigen::Index>(t.config.regs[0])) = t.amplitude;
  return v;
}

}  // namespace

bool OracleReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

Json OracleReport::to_json() const {
  Json j;
  j["v"] = kTranscriptVersion;
  j["n"] = n;
  j["passed"] = all_passed();
  for (const auto& c : checks) {
    j["checks"].push_back(
        Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  return j;
}

std::string OracleReport::to_text() const {
  std::string out;
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "[%s] %-52s %.3e (tol %.0e)\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.tolerance);
    out += buf;
  }
  return out;
}

OracleReport oracle_report(int n, std::uint64_t seed) {
  if (n > 7) throw std::out_of_range("oracle suite needs n <= 7 (n! <= 5040), got " + std::to_string(n));
  // The even-sum projector form needs odd keys, i.e. n = 2(2m+1).
  if (n < 6 || n % 4 != 2) {
    throw std::invalid_argument("oracle suite needs n of the form 2(2m+1) with n <= 7, got " +
                                std::to_string(n));
  }
  OracleReport report;
  report.n = n;
  auto deviation = [&](std::string name, double value) {
    report.checks.push_back({std::move(name), value, kDenseTolerance, value <= kDenseTolerance});
  };

  Rng rng(seed);
  const Permutation key = sample_involution(rng, n);
  const auto dim = static_cast<Eigen::Index>(factorial(n));
  const DenseMatrix id = DenseMatrix::Identity(dim, dim);
  const DenseMatrix rho_plus = oracle_density(EnsembleKind::kPlus, key);
  const DenseMatrix rho_minus = oracle_density(EnsembleKind::kMinus, key);
  const DenseMatrix mixed = oracle_density(EnsembleKind::kMixed, key);

  for (auto [label, rho] : {std::pair{"rho+", &rho_plus}, std::pair{"rho-", &rho_minus}}) {
    const DensityCheck c = check_density(*rho);
    deviation(std::string(label) + " hermitian", c.hermitian_deviation);
    deviation(std::string(label) + " trace - 1", c.trace_deviation);
    deviation(std::string(label) + " negative eigenvalue", std::max(0.0, -c.min_eigenvalue));
    deviation(std::string(label) + " rank - n!/2", std::abs(c.rank - static_cast<double>(dim) / 2));
  }
  deviation("rho+ rho- = 0", (rho_plus * rho_minus).cwiseAbs().maxCoeff());

  const DenseMatrix p_plus = dense_projector_closed_form(key, PmOutcome::kPlus);
  const DenseMatrix p_minus = dense_projector_closed_form(key, PmOutcome::kMinus);
  deviation("P+ + P- = I", max_abs_deviation(p_plus + p_minus, id));
  deviation("P+ P- = 0", (p_plus * p_minus).cwiseAbs().maxCoeff());
  deviation("P+ P+ = P+", max_abs_deviation(p_plus * p_plus, p_plus));
  deviation("(I + R)/2 = even-sum P+",
            max_abs_deviation(p_plus, dense_projector_even_sum(key, PmOutcome::kPlus)));
  deviation("(I - R)/2 = even-sum P-",
            max_abs_deviation(p_minus, dense_projector_even_sum(key, PmOutcome::kMinus)));

  deviation("Tr[P+ rho+] = 1", std::abs((p_plus * rho_plus).trace() - 1.0));
  deviation("Tr[P- rho-] = 1", std::abs((p_minus * rho_minus).trace() - 1.0));

  double wrong_key_dev = 0;
  for (const auto& wrong : enumerate_involutions_by_filter(n)) {
    if (wrong == key) continue;
    const DenseMatrix q = dense_projector_closed_form(wrong, PmOutcome::kPlus);
    // Tr[Q ρ] without the full product.
    const std::complex<double> tr_plus = (q.transpose().cwiseProduct(rho_plus)).sum();
    const std::complex<double> tr_minus = (q.transpose().cwiseProduct(rho_minus)).sum();
    wrong_key_dev = std::max({wrong_key_dev, std::abs(tr_plus - 0.5), std::abs(tr_minus - 0.5)});
  }
  deviation("Tr[P'+ rho+-] = 1/2 for every wrong key", wrong_key_dev);

  const DenseMatrix sgn = dense_sign_gate(n);
  deviation("C_sgn rho+ C_sgn^dag = rho-", max_abs_deviation(sgn * rho_plus * sgn.adjoint(), rho_minus));
  deviation("C_sgn (I/n!) C_sgn^dag = I/n!", max_abs_deviation(sgn * mixed * sgn.adjoint(), mixed));

  // Circuit-prepared ψ+ averaged over even σ reproduces ρ+.
  std::vector<SparseState> even_samples;
  for (Eigen::Index a = 0; a < dim; ++a) {
    const Permutation sigma = decode(PermIndex{static_cast<std::uint64_t>(a), n});
    if (sign(sigma) == 1) even_samples.push_back(generate_plus_from(key, sigma).payload);
  }
  deviation("circuit ensemble over even sigma = rho+",
            max_abs_deviation(ensemble_average(even_samples), rho_plus));

  double sparse_dev = 0;
  for (int i = 0; i < 50; ++i) {
    const SparseState s = random_state(rng, n, 1 + static_cast<int>(uniform_below(rng, 12)));
    for (auto branch : {PmOutcome::kPlus, PmOutcome::kMinus}) {
      const Eigen::VectorXcd sparse = to_dense(project_pm(s, key, 0, branch));
      const Eigen::VectorXcd dense = dense_projector_even_sum(key, branch) * to_dense(s);
      sparse_dev = std::max(sparse_dev, (sparse - dense).cwiseAbs().maxCoeff());
    }
  }
  deviation("sparse (I +- R)/2 = dense projector on random states", sparse_dev);
  return report;
}

Json distinguish_report(int n, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("distinguish_report: need at least one trial");
  Rng rng(seed);
  std::uint64_t circuit_ok = 0, measure_ok = 0, wrong_circuit_ok = 0, wrong_measure_ok = 0, total = 0;
  double max_gap = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto branch : {PmOutcome::kPlus, PmOutcome::kMinus}) {
      const Permutation key = sample_involution(rng, n);
      const Permutation wrong = other_key(rng, key);
      QscdSample s = generate_plus(key, rng);
      if (branch == PmOutcome::kMinus) s = convert_sign(s);
      const int want = branch == PmOutcome::kPlus ? 0 : 1;
      circuit_ok += distinguish_circuit(key, s, rng).label == want;
      measure_ok += measure_bit(key, s, rng).label == want;
      wrong_circuit_ok += distinguish_circuit(wrong, s, rng).label == want;
      wrong_measure_ok += measure_bit(wrong, s, rng).label == want;
      for (const auto& k : {key, wrong}) {
        const auto pc = distinguish_probabilities(k, s.payload);
        const auto pm = pm_probabilities(s.payload, k, 0);
        max_gap = std::max({max_gap, std::abs(pc[0] - pm.plus), std::abs(pc[1] - pm.minus)});
      }
      ++total;
    }
  }
  auto rate = [&](std::uint64_t k) {
    const Interval ci = wilson_interval(k, total);
    return Json{{"correct", k}, {"of", total}, {"accuracy", static_cast<double>(k) / total},
                {"ci95", Json::array({ci.low, ci.high})}};
  };
  Json j;
  j["v"] = kTranscriptVersion;
  j["n"] = n;
  j["trials_per_branch"] = trials;
  j["seed"] = seed;
  j["correct_key"] = Json{{"circuit", rate(circuit_ok)}, {"measurement", rate(measure_ok)}};
  j["wrong_key"] = Json{{"circuit", rate(wrong_circuit_ok)}, {"measurement", rate(wrong_measure_ok)}};
  j["max_path_probability_gap"] = max_gap;
  return j;
}

std::uint64_t double_factorial_odd(int n) {
  if (n % 2 != 0) return 0;
  std::uint64_t f = 1;
  for (int k = n - 1; k > 1; k -= 2) f *= static_cast<std::uint64_t>(k);
  return f;
}

Json enumerate_k_report(int n) {
  if (n < 2 || n > 10) throw std::invalid_argument("enumerate-k supports 2 <= n <= 10");
  const auto members = enumerate_involutions_by_filter(n);
  Json j;
  j["v"] = kTranscriptVersion;
  j["n"] = n;
  j["count"] = members.size();
  j["matching_count"] = double_factorial_odd(n);
  j["factorial_ratio"] = n % 2 == 0 ? factorial(n) / factorial(n / 2) : 0;
  j["members"] = Json::array();
  for (const auto& p : members) j["members"].push_back(to_cycle_string(p));
  return j;
}

}  // namespace qot
