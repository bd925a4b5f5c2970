#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qot/dense_oracle.h"
#include "qot/protocol.h"
#include "qot/registry.h"
#include "qot/transcript.h"

namespace qot {

// Which key a premeasuring Bob uses.
enum class PremeasureKey { kRandom, kTrueKey, kWrongKey };

// Test hooks. Defaults reproduce an ordinary session.
struct SessionControls {
  std::optional<BitString> message;
  std::optional<Side> alice_side;
  std::optional<Side> bob_side;
  PremeasureKey premeasure_key = PremeasureKey::kRandom;
};

struct SessionSeeds {
  std::uint64_t session = 0;
  std::uint64_t alice = 0;
  std::uint64_t bob = 0;
  std::uint64_t nature = 0;
  std::uint64_t input = 0;
};

SessionSeeds derive_session_seeds(std::uint64_t session_seed);

struct SessionResult {
  ProtocolParams params;
  AliceStrategy alice_strategy = AliceStrategy::kHonest;
  BobStrategy bob_strategy = BobStrategy::kHonest;
  SessionSeeds seeds;

  Terminal terminal = Terminal::kNotReceived;
  bool bob_received = false;
  std::optional<std::size_t> hamming_d;
  std::optional<bool> premeasure_success;
  std::optional<bool> alice_guess_received;
  std::string violation;

  // Ground truth, for the inspector and statistics only.
  std::optional<Permutation> alice_key;
  std::optional<Permutation> gamma;
  BitString message;
  BitString digest_source;
  std::optional<BitString> decoded;
  std::vector<HandleId> handles;

  SessionTranscript transcript;
  std::unique_ptr<QuantumRegistry> registry;

  bool aborted() const {
    return terminal == Terminal::kAbortedCheat || terminal == Terminal::kMalformedDelta ||
           terminal == Terminal::kProtocolViolation;
  }
  bool gamma_equals_pi() const { return gamma && alice_key && *gamma == *alice_key; }
  // Digest matched although Bob decoded something other than what was hashed.
  bool hash_collision() const { return bob_received && decoded && *decoded != digest_source; }
  std::size_t correct_bits() const;
};

// Drives both parties through steps 1-9. Deterministic in `seed`.
// Throws std::invalid_argument for bad params; protocol violations by a
// strategy end the session with Terminal::kProtocolViolation.
SessionResult run_session(const ProtocolParams& params, AliceStrategy alice, BobStrategy bob,
                          std::uint64_t seed, const SessionControls& controls = {});

// session_id, strategies, gamma_equals_pi, bob_received, aborted,
// hamming_d, seeds and a few extras.
Json session_summary_json(const SessionResult& r, std::uint64_t session_id);

// Privileged post-hoc checks; empty for an honest run.
std::vector<std::string> inspector_verify(const SessionResult& r);

// Ensemble of the transmitted payloads carrying `branch` (+ for 1 bits)
// against the exact density for the session key. Honest Alice only.
EnsembleComparison inspector_oracle_check(const SessionResult& r, PmOutcome branch);

// Each transmitted state as sent, in the qsim dump format.
std::string dump_transmitted_states(const SessionResult& r);

}  // namespace qot
