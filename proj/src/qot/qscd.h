#pragma once

#include <optional>
#include <vector>

#include "qot/permutation.h"
#include "qot/rng.h"
#include "qot/sparse_state.h"

namespace qot {

// How an honest sample was prepared. Only the inspector may look at this.
struct SampleOrigin {
  Permutation sigma;
  Permutation key;
  PmOutcome branch;
};

// One transmitted unit: a single-register state, ψ±_π(σ) when honest.
struct QscdSample {
  SparseState payload;
  std::optional<SampleOrigin> origin;

  int degree() const { return payload.layout().n; }
};

// Throws std::invalid_argument unless key is a fixed-point-free involution.
void require_trapdoor_key(const Permutation& key);

// Register contents after each step of the preparation circuit on
// |0⟩|id⟩|σ⟩: initial, H, C_π, C_1, swap, C^r_∘ (six states).
std::vector<SparseState> generation_trace(const Permutation& key, const Permutation& sigma);

// Runs the preparation circuit for a uniformly random σ and returns the
// third register, ψ+_π(σ).
QscdSample generate_plus(const Permutation& key, Rng& rng);
QscdSample generate_plus_from(const Permutation& key, const Permutation& sigma);

// C_sgn on the payload. Needs no key; ψ+ becomes ±ψ-.
QscdSample convert_sign(const QscdSample& s);

// Raw distinguisher label: 0 for the + branch, 1 for the − branch.
struct LabelMeasurement {
  int label;
  QscdSample sample;

  PmOutcome outcome() const { return label == 0 ? PmOutcome::kPlus : PmOutcome::kMinus; }
};

// Ancilla |0⟩, H, C_π, H, then measure the ancilla.
LabelMeasurement distinguish_circuit(const Permutation& key, const QscdSample& s, Rng& rng);

// Exact ancilla outcome probabilities and post-measurement payloads of the
// distinguishing circuit.
std::array<double, 2> distinguish_probabilities(const Permutation& key, const SparseState& payload);
SparseState distinguish_collapse(const Permutation& key, const SparseState& payload, int label);

// Projective measurement M_π on the payload.
LabelMeasurement measure_bit(const Permutation& key, const QscdSample& s, Rng& rng);

// Message bit 1 ships as ψ+ and 0 as C_sgn(ψ+).
QscdSample encode_bit(int bit, const Permutation& key, Rng& rng);

// + decodes to 1 and − to 0.
int decode_bit(PmOutcome outcome);

}  // namespace qot
