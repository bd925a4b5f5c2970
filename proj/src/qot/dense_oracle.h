#pragma once

// Brute-force dense matrices over H_n = span{|σ⟩ : σ ∈ S_n}, indexed by
// Lehmer rank. Only for checking the sparse simulator; limited to n! <= 5040.

#include <span>

#include <Eigen/Dense>

#include "qot/permutation.h"
#include "qot/sparse_state.h"

namespace qot {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr std::uint64_t kMaxOracleDimension = 5040;

enum class EnsembleKind { kPlus, kMinus, kMixed };

// ρ± = (1/2n!) Σ_σ (|σ⟩ ± |σ∘π⟩)(⟨σ| ± ⟨σ∘π|), or 𝟙/n! for kMixed.
DenseMatrix oracle_density(EnsembleKind kind, const Permutation& pi);

// R_π as a permutation matrix.
DenseMatrix dense_flip(const Permutation& pi);

// (I ± R_π)/2.
DenseMatrix dense_projector_closed_form(const Permutation& pi, PmOutcome branch);

// (1/2) Σ_{σ even} (|σ⟩ ± |σ∘π⟩)(⟨σ| ± ⟨σ∘π|).
DenseMatrix dense_projector_even_sum(const Permutation& pi, PmOutcome branch);

// diag(sgn σ).
DenseMatrix dense_sign_gate(int n);

// |s⟩⟨s| for a single-register state.
DenseMatrix outer_product(const SparseState& s);

DenseMatrix ensemble_average(std::span<const SparseState> samples);

double max_abs_deviation(const DenseMatrix& a, const DenseMatrix& b);

struct DensityCheck {
  double hermitian_deviation = 0;
  double trace_deviation = 0;
  double min_eigenvalue = 0;
  int rank = 0;  // eigenvalues above 1e-9
};

DensityCheck check_density(const DenseMatrix& rho);

// Entrywise comparison of an empirical ensemble average against an exact
// density. Entries where the oracle vanishes must vanish in the sample.
// Elsewhere each sample contributes either 0 or a fixed value c per entry,
// so the standard error is sqrt((|c|·|ρ| − |ρ|²)/N). The z threshold is the
// family-wise 3σ level (two-sided 0.0027) split over the nonzero entries.
struct EnsembleComparison {
  std::size_t samples = 0;
  std::size_t nonzero_entries = 0;
  double max_z = 0;
  double z_threshold = 0;
  double max_support_violation = 0;
  bool passed = false;
};

EnsembleComparison compare_ensemble(std::span<const SparseState> samples,
                                    const DenseMatrix& oracle);

// Upper quantile of the standard normal: P(Z > z) = tail.
double normal_upper_quantile(double tail);

}  // namespace qot
