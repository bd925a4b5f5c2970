#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qot/hashing.h"
#include "qot/permutation.h"
#include "qot/registry.h"
#include "qot/rng.h"

namespace qot {

struct ProtocolParams {
  int n = 6;
  int ell = 32;
  double threshold_sigmas = 3.0;
  int copies = 1;

  // Throws std::invalid_argument: n must be 2(2m+1) with m >= 1, ell even
  // and >= 8, threshold positive, copies >= 1.
  void validate() const;
  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

enum class AliceStrategy { kHonest, kInvariantCheat, kMixedCheat };
enum class BobStrategy { kHonest, kPremeasure };

std::string_view strategy_name(AliceStrategy s);
std::string_view strategy_name(BobStrategy s);
// Accepts "honest", "invariant-cheat", "mixed-cheat" / "honest", "premeasure".
AliceStrategy parse_alice_strategy(std::string_view name);
BobStrategy parse_bob_strategy(std::string_view name);

// A protocol value that is written once, in its step, and read afterwards.
template <typename T>
class StepValue {
 public:
  explicit StepValue(const char* name) : name_(name) {}

  void set(T v) {
    if (value_) throw std::logic_error(std::string(name_) + " assigned twice");
    value_ = std::move(v);
  }
  const T& get() const {
    if (!value_) throw std::logic_error(std::string(name_) + " read before it was set");
    return *value_;
  }
  bool has_value() const { return value_.has_value(); }

 private:
  const char* name_;
  std::optional<T> value_;
};

enum class Phase { kTransfer, kOpening, kDone };

// Side on which τ is composed with the key or with δ.
enum class Side { kRight, kLeft };

std::string_view side_name(Side s);

struct AliceState {
  Phase phase = Phase::kTransfer;
  StepValue<Permutation> key{"alice.key"};
  StepValue<BitString> message{"alice.message"};
  StepValue<BitString> hashed{"alice.hashed"};  // the string behind the digest
  StepValue<BitString> digest{"alice.digest"};
  StepValue<HashSpec> spec{"alice.spec"};
  StepValue<Side> side{"alice.side"};
  // What a cheating Alice believes about Bob's reception.
  std::optional<bool> guess_received;
};

struct BobState {
  Phase phase = Phase::kTransfer;
  StepValue<Permutation> challenge{"bob.tau"};
  StepValue<Permutation> response{"bob.delta"};
  StepValue<Side> side{"bob.side"};
  StepValue<Permutation> measurement_key{"bob.gamma"};
  StepValue<BitString> decoded{"bob.decoded"};
  StepValue<Permutation> recheck_key{"bob.recheck_key"};
  StepValue<BitString> recheck{"bob.recheck"};
};

// What travels from Alice to Bob at the end of the transfer phase.
struct TransferPackage {
  std::vector<HandleId> handles;  // ell * copies, copies of bit i contiguous
  BitString digest;
  HashSpec spec;
};

struct AliceTransfer {
  TransferPackage package;
  AliceState state;
};

// Steps 1-3: fresh key, one encoded sample per bit and copy, digest.
// Handles stay owned by Alice; the caller moves them across the channel.
AliceTransfer alice_transfer(const ProtocolParams& params, const BitString& message,
                             QuantumRegistry& registry, Rng& rng);

// Sends simultaneous eigenvectors of every M_γ: the uniform superposition
// for 1 bits and its sign-twisted version for 0 bits. Needs n <= 8.
AliceTransfer cheating_alice_invariant(const ProtocolParams& params, const BitString& message,
                                       QuantumRegistry& registry, Rng& rng);

// Sends uniformly random basis states (an unravelling of 𝟙/n!) with the
// digest of an unrelated random string.
AliceTransfer cheating_alice_mixed(const ProtocolParams& params, QuantumRegistry& registry,
                                   Rng& rng);

// Step 4.
Permutation bob_challenge(const ProtocolParams& params, BobState& bob, Rng& rng);

// Step 5: δ = key∘τ (right) or τ∘key (left) on a fair coin unless forced.
Permutation alice_respond(AliceState& alice, const Permutation& tau, Rng& rng,
                          std::optional<Side> forced = std::nullopt);

// Step 6: γ = δ∘τ⁻¹ (right) or τ⁻¹∘δ (left). Returns nullopt when δ is
// malformed, i.e. δ∘τ⁻¹ or τ⁻¹∘δ is not a fixed-point-free involution.
std::optional<Permutation> bob_resolve(BobState& bob, const Permutation& delta, Rng& rng,
                                       std::optional<Side> forced = std::nullopt);

enum class Terminal {
  kAccepted,          // digest matched and the recheck looked honest
  kNotReceived,       // digest mismatch
  kAbortedCheat,      // digest matched but the recheck exposed cheating
  kMalformedDelta,
  kProtocolViolation,
};

std::string_view terminal_name(Terminal t);

struct OpenResult {
  Terminal terminal = Terminal::kNotReceived;
  bool digest_matched = false;
  std::optional<std::size_t> hamming_d;
};

// Steps 7-9 with the γ resolved in step 6. Accepts iff
// |d − ℓ/2| <= threshold_sigmas·√(ℓ/4).
OpenResult bob_open(const ProtocolParams& params, BobState& bob, QuantumRegistry& registry,
                    const TransferPackage& package, Rng& rng);

// True when d lies in the two-sided acceptance window.
bool recheck_accepts(const ProtocolParams& params, std::size_t d);

struct PremeasureResult {
  Permutation guess_key;
  BitString guess;
  bool digest_matched = false;
};

// Cheating Bob measures everything before the opening with a guessed key.
PremeasureResult cheating_bob_premeasure(const ProtocolParams& params, QuantumRegistry& registry,
                                         const TransferPackage& package, Rng& rng,
                                         std::optional<Permutation> forced_key = std::nullopt);

}  // namespace qot
