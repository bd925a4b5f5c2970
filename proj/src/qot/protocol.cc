#include "qot/protocol.h"

#include <cmath>

namespace qot {

void ProtocolParams::validate() const {
  if (n < 6 || n % 4 != 2) {
    throw std::invalid_argument("n must have the form 2(2m+1) with m >= 1 (6, 10, 14, ...), got " +
                                std::to_string(n));
  }
  if (n > kMaxDegree) throw std::invalid_argument("n exceeds " + std::to_string(kMaxDegree));
  if (ell < 8 || ell % 2 != 0) {
    throw std::invalid_argument("ell must be even and >= 8, got " + std::to_string(ell));
  }
  if (!(threshold_sigmas > 0) || !std::isfinite(threshold_sigmas)) {
    throw std::invalid_argument("threshold_sigmas must be positive");
  }
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
}

std::string_view strategy_name(AliceStrategy s) {
  switch (s) {
    case AliceStrategy::kHonest: return "honest";
    case AliceStrategy::kInvariantCheat: return "invariant-cheat";
    case AliceStrategy::kMixedCheat: return "mixed-cheat";
  }
  return "unknown";
}

std::string_view strategy_name(BobStrategy s) {
  return s == BobStrategy::kHonest ? "honest" : "premeasure";
}

AliceStrategy parse_alice_strategy(std::string_view name) {
  for (auto s : {AliceStrategy::kHonest, AliceStrategy::kInvariantCheat, AliceStrategy::kMixedCheat}) {
    if (strategy_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown Alice strategy \"" + std::string(name) +
                              "\" (honest, invariant-cheat, mixed-cheat)");
}

BobStrategy parse_bob_strategy(std::string_view name) {
  for (auto s : {BobStrategy::kHonest, BobStrategy::kPremeasure}) {
    if (strategy_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown Bob strategy \"" + std::string(name) +
                              "\" (honest, premeasure)");
}

std::string_view side_name(Side s) { return s == Side::kRight ? "right" : "left"; }

std::string_view terminal_name(Terminal t) {
  switch (t) {
    case Terminal::kAccepted: return "accepted";
    case Terminal::kNotReceived: return "not_received";
    case Terminal::kAbortedCheat: return "aborted_cheat";
    case Terminal::kMalformedDelta: return "malformed_delta";
    case Terminal::kProtocolViolation: return "protocol_violation";
  }
  return "unknown";
}

namespace {

AliceTransfer package_samples(const ProtocolParams& params, std::vector<QscdSample> samples,
                              Permutation key, BitString message, BitString digest_source,
                              QuantumRegistry& registry, Rng& rng) {
  AliceTransfer out;
  const HashSpec spec = sample_hash(params.ell, rng);
  out.state.key.set(std::move(key));
  out.state.message.set(std::move(message));
  out.state.spec.set(spec);
  out.state.digest.set(hash(spec, digest_source));
  out.state.hashed.set(std::move(digest_source));
  for (auto& s : samples) out.package.handles.push_back(registry.create(Party::kAlice, std::move(s)));
  out.package.digest = out.state.digest.get();
  out.package.spec = spec;
  out.state.phase = Phase::kOpening;
  return out;
}

void require_message(const ProtocolParams& params, const BitString& message) {
  if (message.size() != static_cast<std::size_t>(params.ell)) {
    throw std::invalid_argument("message has " + std::to_string(message.size()) +
                                " bits, expected ell = " + std::to_string(params.ell));
  }
  for (auto b : message) {
    if (b > 1) throw std::invalid_argument("message bits must be 0 or 1");
  }
}

// Majority over the copies of each bit; a tie goes to the first copy.
BitString measure_all(const ProtocolParams& params, QuantumRegistry& registry,
                      const std::vector<HandleId>& handles, const Permutation& key) {
  const auto copies = static_cast<std::size_t>(params.copies);
  if (handles.size() != static_cast<std::size_t>(params.ell) * copies) {
    throw std::logic_error("package holds " + std::to_string(handles.size()) +
                           " handles, expected ell * copies");
  }
  BitString bits(static_cast<std::size_t>(params.ell));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    int ones = 0;
    int first = 0;
    for (std::size_t c = 0; c < copies; ++c) {
      const int label = registry.measure(Party::kBob, handles[i * copies + c], key);
      const int b = decode_bit(label == 0 ? PmOutcome::kPlus : PmOutcome::kMinus);
      if (c == 0) first = b;
      ones += b;
    }
    const int zeros = static_cast<int>(copies) - ones;
    bits[i] = static_cast<std::uint8_t>(ones == zeros ? first : (ones > zeros ? 1 : 0));
  }
  return bits;
}

}  // namespace

AliceTransfer alice_transfer(const ProtocolParams& params, const BitString& message,
                             QuantumRegistry& registry, Rng& rng) {
  params.validate();
  require_message(params, message);
  Permutation key = sample_involution(rng, params.n);
  std::vector<QscdSample> samples;
  samples.reserve(message.size() * static_cast<std::size_t>(params.copies));
  for (auto bit : message) {
    for (int c = 0; c < params.copies; ++c) samples.push_back(encode_bit(bit, key, rng));
  }
  return package_samples(params, std::move(samples), std::move(key), message, message, registry, rng);
}

AliceTransfer cheating_alice_invariant(const ProtocolParams& params, const BitString& message,
                                       QuantumRegistry& registry, Rng& rng) {
  params.validate();
  require_message(params, message);
  if (params.n > 8) throw std::invalid_argument("invariant-state attack needs n! to fit in memory (n <= 8)");
  const SparseState uniform = uniform_superposition(params.n);
  const SparseState twisted = c_sgn(uniform, 0);
  std::vector<QscdSample> samples;
  for (auto bit : message) {
    for (int c = 0; c < params.copies; ++c) {
      samples.push_back(QscdSample{bit ? uniform : twisted, std::nullopt});
    }
  }
  Permutation key = sample_involution(rng, params.n);
  auto out = package_samples(params, std::move(samples), std::move(key), message, message, registry, rng);
  out.state.guess_received = true;
  return out;
}

AliceTransfer cheating_alice_mixed(const ProtocolParams& params, QuantumRegistry& registry, Rng& rng) {
  params.validate();
  std::vector<QscdSample> samples;
  const auto count = static_cast<std::size_t>(params.ell) * static_cast<std::size_t>(params.copies);
  for (std::size_t i = 0; i < count; ++i) {
    samples.push_back(QscdSample{basis_state(sample_symmetric(rng, params.n)), std::nullopt});
  }
  BitString message = random_bits(rng, static_cast<std::size_t>(params.ell));
  BitString decoy = random_bits(rng, static_cast<std::size_t>(params.ell));
  Permutation key = sample_involution(rng, params.n);
  auto out = package_samples(params, std::move(samples), std::move(key), std::move(message),
                             std::move(decoy), registry, rng);
  out.state.guess_received = false;
  return out;
}

Permutation bob_challenge(const ProtocolParams& params, BobState& bob, Rng& rng) {
  bob.phase = Phase::kOpening;
  bob.challenge.set(sample_symmetric(rng, params.n));
  return bob.challenge.get();
}

Permutation alice_respond(AliceState& alice, const Permutation& tau, Rng& rng,
                          std::optional<Side> forced) {
  // The coin is always drawn so forcing does not shift the stream.
  const Side drawn = coin(rng) ? Side::kLeft : Side::kRight;
  alice.side.set(forced.value_or(drawn));
  alice.phase = Phase::kDone;
  const Permutation& key = alice.key.get();
  return alice.side.get() == Side::kRight ? compose(key, tau) : compose(tau, key);
}

std::optional<Permutation> bob_resolve(BobState& bob, const Permutation& delta, Rng& rng,
                                       std::optional<Side> forced) {
  const Side drawn = coin(rng) ? Side::kLeft : Side::kRight;
  bob.response.set(delta);
  bob.side.set(forced.value_or(drawn));
  const Permutation tau_inv = inverse(bob.challenge.get());
  const Permutation right = compose(delta, tau_inv);
  const Permutation left = compose(tau_inv, delta);
  if (!is_fixed_point_free_involution(right) || !is_fixed_point_free_involution(left)) {
    bob.phase = Phase::kDone;
    return std::nullopt;
  }
  bob.measurement_key.set(bob.side.get() == Side::kRight ? right : left);
  return bob.measurement_key.get();
}

bool recheck_accepts(const ProtocolParams& params, std::size_t d) {
  const double half = params.ell / 2.0;
  const double window = params.threshold_sigmas * std::sqrt(params.ell / 4.0);
  return std::abs(static_cast<double>(d) - half) <= window;
}

OpenResult bob_open(const ProtocolParams& params, BobState& bob, QuantumRegistry& registry,
                    const TransferPackage& package, Rng& rng) {
  OpenResult out;
  const Permutation& gamma = bob.measurement_key.get();
  bob.decoded.set(measure_all(params, registry, package.handles, gamma));
  out.digest_matched = hash(package.spec, bob.decoded.get()) == package.digest;
  if (!out.digest_matched) {
    out.terminal = Terminal::kNotReceived;
    bob.phase = Phase::kDone;
    return out;
  }
  Permutation recheck_key = sample_involution(rng, params.n);
  while (recheck_key == gamma) recheck_key = sample_involution(rng, params.n);
  bob.recheck_key.set(recheck_key);
  bob.recheck.set(measure_all(params, registry, package.handles, recheck_key));
  const std::size_t d = hamming_distance(bob.recheck.get(), bob.decoded.get());
  out.hamming_d = d;
  out.terminal = recheck_accepts(params, d) ? Terminal::kAccepted : Terminal::kAbortedCheat;
  bob.phase = Phase::kDone;
  return out;
}

PremeasureResult cheating_bob_premeasure(const ProtocolParams& params, QuantumRegistry& registry,
                                         const TransferPackage& package, Rng& rng,
                                         std::optional<Permutation> forced_key) {
  Permutation drawn = sample_involution(rng, params.n);
  PremeasureResult out{forced_key.value_or(drawn), {}, false};
  out.guess = measure_all(params, registry, package.handles, out.guess_key);
  out.digest_matched = hash(package.spec, out.guess) == package.digest;
  return out;
}

}  // namespace qot
