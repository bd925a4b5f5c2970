#include "qot/dense_oracle.h"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qot {

namespace {

Eigen::Index dimension_for(int n) {
  const std::uint64_t dim = factorial(n);
  if (dim > kMaxOracleDimension) {
    throw std::out_of_range("dense oracle limited to n! <= " +
                                std::to_string(kMaxOracleDimension) + " (n <= 7)");
  }
  return static_cast<Eigen::Index>(dim);
}

Eigen::Index idx(const Permutation& p) { return static_cast<Eigen::Index>(encode(p).value); }

}  // namespace

DenseMatrix oracle_density(EnsembleKind kind, const Permutation& pi) {
  const int n = pi.degree();
  const Eigen::Index dim = dimension_for(n);
  if (kind == EnsembleKind::kMixed) {
    return DenseMatrix::Identity(dim, dim) / static_cast<double>(dim);
  }
  const double s = kind == EnsembleKind::kPlus ? 1.0 : -1.0;
  const double w = 1.0 / (2.0 * static_cast<double>(dim));
  DenseMatrix rho = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const Permutation sigma = decode(PermIndex{static_cast<std::uint64_t>(a), n});
    const Eigen::Index b = idx(compose(sigma, pi));
    rho(a, a) += w;
    rho(a, b) += s * w;
    rho(b, a) += s * w;
    rho(b, b) += w;
  }
  return rho;
}

DenseMatrix dense_flip(const Permutation& pi) {
  const int n = pi.degree();
  const Eigen::Index dim = dimension_for(n);
  DenseMatrix r = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const Permutation sigma = decode(PermIndex{static_cast<std::uint64_t>(a), n});
    r(idx(compose(sigma, pi)), a) = 1.0;
  }
  return r;
}

DenseMatrix dense_projector_closed_form(const Permutation& pi, PmOutcome branch) {
  const DenseMatrix r = dense_flip(pi);
  const DenseMatrix id = DenseMatrix::Identity(r.rows(), r.cols());
  return branch == PmOutcome::kPlus ? DenseMatrix((id + r) / 2.0) : DenseMatrix((id - r) / 2.0);
}

DenseMatrix dense_projector_even_sum(const Permutation& pi, PmOutcome branch) {
  const int n = pi.degree();
  const Eigen::Index dim = dimension_for(n);
  const double s = branch == PmOutcome::kPlus ? 1.0 : -1.0;
  DenseMatrix p = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const Permutation sigma = decode(PermIndex{static_cast<std::uint64_t>(a), n});
    if (sign(sigma) != 1) continue;
    const Eigen::Index b = idx(compose(sigma, pi));
    p(a, a) += 0.5;
    p(a, b) += 0.5 * s;
    p(b, a) += 0.5 * s;
    p(b, b) += 0.5;
  }
  return p;
}

DenseMatrix dense_sign_gate(int n) {
  const Eigen::Index dim = dimension_for(n);
  DenseMatrix g = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    g(a, a) = static_cast<double>(sign(decode(PermIndex{static_cast<std::uint64_t>(a), n})));
  }
  return g;
}

DenseMatrix outer_product(const SparseState& s) {
  if (s.layout().has_ancilla || s.layout().perm_registers != 1) {
    throw std::invalid_argument("outer_product: expected a single permutation register");
  }
  const Eigen::Index dim = dimension_for(s.layout().n);
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& a : s.terms()) {
    for (const auto& b : s.terms()) {
      m(static_cast<Eigen::Index>(a.config.regs[0]), static_cast<Eigen::Index>(b.config.regs[0])) +=
          a.amplitude * std::conj(b.amplitude);
    }
  }
  return m;
}

DenseMatrix ensemble_average(std::span<const SparseState> samples) {
  if (samples.empty()) throw std::invalid_argument("ensemble_average: no samples");
  const Eigen::Index dim = dimension_for(samples.front().layout().n);
  DenseMatrix sum = DenseMatrix::Zero(dim, dim);
  for (const auto& s : samples) {
    for (const auto& a : s.terms()) {
      for (const auto& b : s.terms()) {
        sum(static_cast<Eigen::Index>(a.config.regs[0]),
            static_cast<Eigen::Index>(b.config.regs[0])) += a.amplitude * std::conj(b.amplitude);
      }
    }
  }
  return sum / static_cast<double>(samples.size());
}

double max_abs_deviation(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_deviation: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

DensityCheck check_density(const DenseMatrix& rho) {
  DensityCheck out;
  out.hermitian_deviation = max_abs_deviation(rho, rho.adjoint());
  out.trace_deviation = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(rho, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  out.min_eigenvalue = ev.minCoeff();
  out.rank = static_cast<int>((ev.array() > 1e-9).count());
  return out;
}

double normal_upper_quantile(double tail) {
  if (!(tail > 0 && tail < 1)) throw std::invalid_argument("normal_upper_quantile: tail out of (0,1)");
  double lo = -40, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > tail) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

EnsembleComparison compare_ensemble(std::span<const SparseState> samples,
                                    const DenseMatrix& oracle) {
  if (samples.empty()) throw std::invalid_argument("compare_ensemble: no samples");
  const Eigen::Index dim = oracle.rows();
  DenseMatrix sum = DenseMatrix::Zero(dim, dim);
  Eigen::MatrixXd peak = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& s : samples) {
    if (static_cast<Eigen::Index>(factorial(s.layout().n)) != dim) {
      throw std::invalid_argument("compare_ensemble: degree mismatch");
    }
    for (const auto& a : s.terms()) {
      for (const auto& b : s.terms()) {
        const auto i = static_cast<Eigen::Index>(a.config.regs[0]);
        const auto j = static_cast<Eigen::Index>(b.config.regs[0]);
        const Amplitude x = a.amplitude * std::conj(b.amplitude);
        sum(i, j) += x;
        peak(i, j) = std::max(peak(i, j), std::abs(x));
      }
    }
  }
  const double count = static_cast<double>(samples.size());
  EnsembleComparison out;
  out.samples = samples.size();
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (std::abs(oracle(i, j)) > 1e-15) ++out.nonzero_entries;
    }
  }
  out.z_threshold = normal_upper_quantile(
      0.0027 / (2.0 * static_cast<double>(std::max<std::size_t>(out.nonzero_entries, 1))));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const Amplitude expected = oracle(i, j);
      const Amplitude observed = sum(i, j) / count;
      const double mag = std::abs(expected);
      if (mag <= 1e-15) {
        out.max_support_violation = std::max(out.max_support_violation, std::abs(observed));
        continue;
      }
      const double c = peak(i, j) > 0 ? peak(i, j) : 0.5;
      const double var = std::max(c * mag - mag * mag, 1e-300) / count;
      out.max_z = std::max(out.max_z, std::abs(observed - expected) / std::sqrt(var));
    }
  }
  out.passed = out.max_support_violation <= 1e-12 && out.max_z <= out.z_threshold;
  return out;
}

}  // namespace qot
