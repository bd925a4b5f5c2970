#pragma once

#include <cstdint>
#include <string>

#include "qot/protocol.h"
#include "qot/session.h"
#include "qot/transcript.h"

namespace qot {

struct Interval {
  double low = 0;
  double high = 0;
};

// Wilson score interval; z = 1.959964 for 95%.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

// Integer counters only, so merging is exact and order-independent.
struct ExperimentStats {
  ProtocolParams params;
  AliceStrategy alice = AliceStrategy::kHonest;
  BobStrategy bob = BobStrategy::kHonest;
  std::uint64_t base_seed = 0;

  std::uint64_t sessions = 0;
  std::uint64_t received = 0;
  std::uint64_t accepted = 0;
  std::uint64_t aborted = 0;
  std::uint64_t aborted_cheat = 0;
  std::uint64_t malformed_delta = 0;
  std::uint64_t protocol_violations = 0;
  std::uint64_t gamma_equals_pi = 0;
  std::uint64_t received_with_gamma_pi = 0;
  std::uint64_t aborted_with_gamma_pi = 0;
  std::uint64_t hash_collisions = 0;
  std::uint64_t premeasure_attempts = 0;
  std::uint64_t premeasure_success = 0;
  std::uint64_t alice_guesses = 0;
  std::uint64_t alice_guesses_correct = 0;
  std::uint64_t correct_bits = 0;
  std::uint64_t decoded_bits = 0;

  void add(const SessionResult& r);
  // Throws std::invalid_argument if the two runs have different settings.
  void merge(const ExperimentStats& other);

  friend bool operator==(const ExperimentStats&, const ExperimentStats&) = default;
};

// N sessions with seeds derive_seed(base_seed, i). The result does not
// depend on `parallelism` (0 picks the hardware concurrency).
ExperimentStats run_experiment(const ProtocolParams& params, AliceStrategy alice, BobStrategy bob,
                               std::uint64_t sessions, std::uint64_t base_seed,
                               unsigned parallelism = 1);

// Same, over the index range [first, last).
ExperimentStats run_experiment_range(const ProtocolParams& params, AliceStrategy alice,
                                     BobStrategy bob, std::uint64_t first, std::uint64_t last,
                                     std::uint64_t base_seed, unsigned parallelism = 1);

Json stats_json(const ExperimentStats& s);
std::string stats_csv_header();
std::string stats_csv_row(const ExperimentStats& s);

}  // namespace qot
