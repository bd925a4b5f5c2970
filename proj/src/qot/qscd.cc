#include "qot/qscd.h"

#include <stdexcept>

namespace qot {

void require_trapdoor_key(const Permutation& key) {
  if (!is_fixed_point_free_involution(key)) {
    throw std::invalid_argument("key " + to_cycle_string(key) +
                                " is not a fixed-point-free involution");
  }
}

std::vector<SparseState> generation_trace(const Permutation& key, const Permutation& sigma) {
  require_trapdoor_key(key);
  const Permutation regs[] = {Permutation::identity(key.degree()), sigma};
  std::vector<SparseState> trace;
  trace.push_back(SparseState::basis(0, regs));
  trace.push_back(hadamard_ancilla(trace.back()));
  trace.push_back(c_pi(trace.back(), key, 0));
  trace.push_back(c_one(trace.back(), 0));
  trace.push_back(c_swap(trace.back(), 0, 1));
  trace.push_back(c_compose_right(trace.back(), 0, 1));
  return trace;
}

QscdSample generate_plus_from(const Permutation& key, const Permutation& sigma) {
  const auto trace = generation_trace(key, sigma);
  return QscdSample{extract_register(trace.back(), 1),
                    SampleOrigin{sigma, key, PmOutcome::kPlus}};
}

QscdSample generate_plus(const Permutation& key, Rng& rng) {
  return generate_plus_from(key, sample_symmetric(rng, key.degree()));
}

QscdSample convert_sign(const QscdSample& s) {
  QscdSample out{c_sgn(s.payload, 0), s.origin};
  if (out.origin) {
    out.origin->branch =
        out.origin->branch == PmOutcome::kPlus ? PmOutcome::kMinus : PmOutcome::kPlus;
  }
  return out;
}

namespace {

SparseState distinguish_pre_measurement(const Permutation& key, const SparseState& payload) {
  require_trapdoor_key(key);
  SparseState s = add_ancilla(payload);
  s = hadamard_ancilla(s);
  s = c_pi(s, key, 0);
  return hadamard_ancilla(s);
}

}  // namespace

std::array<double, 2> distinguish_probabilities(const Permutation& key, const SparseState& payload) {
  return ancilla_probabilities(distinguish_pre_measurement(key, payload));
}

SparseState distinguish_collapse(const Permutation& key, const SparseState& payload, int label) {
  return drop_ancilla(collapse_ancilla(distinguish_pre_measurement(key, payload), label));
}

LabelMeasurement distinguish_circuit(const Permutation& key, const QscdSample& s, Rng& rng) {
  auto m = measure_ancilla(distinguish_pre_measurement(key, s.payload), rng);
  return {m.bit, QscdSample{drop_ancilla(m.state), s.origin}};
}

LabelMeasurement measure_bit(const Permutation& key, const QscdSample& s, Rng& rng) {
  require_trapdoor_key(key);
  auto m = measure_pm(s.payload, key, 0, rng);
  return {m.outcome == PmOutcome::kPlus ? 0 : 1, QscdSample{std::move(m.state), s.origin}};
}

QscdSample encode_bit(int bit, const Permutation& key, Rng& rng) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("encode_bit: bit must be 0 or 1");
  QscdSample plus = generate_plus(key, rng);
  return bit == 1 ? plus : convert_sign(plus);
}

int decode_bit(PmOutcome outcome) { return outcome == PmOutcome::kPlus ? 1 : 0; }

}  // namespace qot
