#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qot/permutation.h"
#include "qot/rng.h"

namespace qot {

using Amplitude = std::complex<double>;

inline constexpr int kMaxPermRegisters = 3;

// Amplitudes smaller than this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-12;
inline constexpr double kNormTolerance = 1e-9;

// Optional ancilla qubit followed by `perm_registers` registers, each
// holding a basis vector |σ⟩ with σ in S_n.
struct RegisterLayout {
  bool has_ancilla = false;
  int perm_registers = 1;
  int n = 2;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

// One computational basis vector: ancilla bit plus the Lehmer rank of every
// permutation register. Unused register slots stay zero.
struct BasisConfig {
  std::uint8_t ancilla = 0;
  std::array<std::uint64_t, kMaxPermRegisters> regs{};

  friend auto operator<=>(const BasisConfig&, const BasisConfig&) = default;
};

// Pure state as a sorted list of nonzero amplitudes. Values are immutable;
// every gate returns a new state.
class SparseState {
 public:
  struct Term {
    BasisConfig config;
    Amplitude amplitude;
  };

  // Basis state |ancilla⟩|regs[0]⟩...; pass ancilla = -1 for no ancilla.
  static SparseState basis(int ancilla, std::span<const Permutation> regs);

  // Sums duplicate configurations and prunes small amplitudes. No
  // normalization is applied.
  static SparseState from_terms(const RegisterLayout& layout, std::vector<Term> terms);

  const RegisterLayout& layout() const { return layout_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }

  double norm_squared() const;

  // Throws std::domain_error for a (numerically) zero vector.
  SparseState normalized() const;

  SparseState scaled(Amplitude factor) const;

  // Permutation stored in register `reg` of a basis configuration.
  Permutation register_value(const BasisConfig& config, int reg) const;

 private:
  SparseState(RegisterLayout layout, std::vector<Term> terms)
      : layout_(layout), terms_(std::move(terms)) {}

  RegisterLayout layout_;
  std::vector<Term> terms_;
};

enum class PmOutcome { kPlus, kMinus };

struct PmProbabilities {
  double plus = 0;
  double minus = 0;
};

struct PmMeasurement {
  PmOutcome outcome;
  SparseState state;
};

struct AncillaMeasurement {
  int bit;
  SparseState state;
};

// Single-register constructors.
SparseState uniform_superposition(int n);
SparseState basis_state(const Permutation& sigma);
// (|σ⟩ ± |σ∘π⟩)/√2.
SparseState flip_pair_state(const Permutation& sigma, const Permutation& pi, PmOutcome branch);

// H on the ancilla.
SparseState hadamard_ancilla(const SparseState& s);

// Controlled right multiplication: on ancilla = 1 branches the target
// register |σ⟩ becomes |σ∘π⟩.
SparseState c_pi(const SparseState& s, const Permutation& pi, int target);

// Flips the ancilla on every branch whose target register is not id_n.
SparseState c_one(const SparseState& s, int target);

// dst ← src∘dst.
SparseState c_compose_right(const SparseState& s, int src, int dst);
// dst ← dst∘src.
SparseState c_compose_left(const SparseState& s, int src, int dst);

SparseState c_swap(const SparseState& s, int r1, int r2);

// Phase sgn(α) on each branch, α being the target register content.
SparseState c_sgn(const SparseState& s, int target);

// R_π: |σ⟩ ↦ |σ∘π⟩ on the target register, unconditionally.
SparseState apply_flip(const SparseState& s, const Permutation& pi, int target);

// (I ± R_π)/2 applied to s, unnormalized.
SparseState project_pm(const SparseState& s, const Permutation& pi, int target,
                       PmOutcome branch);

PmProbabilities pm_probabilities(const SparseState& s, const Permutation& pi, int target);

// Projective measurement {P_π^+, P_π^-} on the target register. The input
// must be normalized; the returned state is renormalized.
PmMeasurement measure_pm(const SparseState& s, const Permutation& pi, int target, Rng& rng);

// Collapse onto a given branch without sampling.
SparseState collapse_pm(const SparseState& s, const Permutation& pi, int target,
                        PmOutcome branch);

Amplitude inner_product(const SparseState& a, const SparseState& b);

// Adjoins an ancilla in |0⟩.
SparseState add_ancilla(const SparseState& s);

// Removes the ancilla; every branch must carry the same ancilla bit.
SparseState drop_ancilla(const SparseState& s);

std::array<double, 2> ancilla_probabilities(const SparseState& s);
SparseState collapse_ancilla(const SparseState& s, int bit);
AncillaMeasurement measure_ancilla(const SparseState& s, Rng& rng);

// Reduced state of `reg` when the ancilla and all other registers sit in a
// single basis configuration. Throws std::domain_error if entangled.
SparseState extract_register(const SparseState& s, int reg);

// Global phase chosen so the largest-magnitude amplitude (first in basis
// order on ties) is real positive.
SparseState canonical_phase(const SparseState& s);

// max |a_i - b_i| after canonical_phase on both.
double distance_up_to_phase(const SparseState& a, const SparseState& b);

// One line per term: "re im | ancilla | reg0 | reg1 ...", "-" for a
// missing ancilla, registers in cycle notation.
std::string dump(const SparseState& s);

}  // namespace qot
