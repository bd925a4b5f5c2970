#include "qot/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qot {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

void ExperimentStats::add(const SessionResult& r) {
  ++sessions;
  received += r.bob_received;
  accepted += r.terminal == Terminal::kAccepted;
  aborted += r.aborted();
  aborted_cheat += r.terminal == Terminal::kAbortedCheat;
  malformed_delta += r.terminal == Terminal::kMalformedDelta;
  protocol_violations += r.terminal == Terminal::kProtocolViolation;
  const bool match = r.gamma_equals_pi();
  gamma_equals_pi += match;
  received_with_gamma_pi += match && r.bob_received;
  aborted_with_gamma_pi += match && r.aborted();
  hash_collisions += r.hash_collision();
  if (r.premeasure_success) {
    ++premeasure_attempts;
    premeasure_success += *r.premeasure_success;
  }
  if (r.alice_guess_received) {
    ++alice_guesses;
    alice_guesses_correct += *r.alice_guess_received == r.bob_received;
  }
  if (r.decoded) {
    correct_bits += r.correct_bits();
    decoded_bits += r.decoded->size();
  }
}

void ExperimentStats::merge(const ExperimentStats& o) {
  if (o.params.n != params.n || o.params.ell != params.ell ||
      o.params.threshold_sigmas != params.threshold_sigmas || o.params.copies != params.copies ||
      o.alice != alice || o.bob != bob || o.base_seed != base_seed) {
    throw std::invalid_argument("cannot merge stats from different experiment settings");
  }
  sessions += o.sessions;
  received += o.received;
  accepted += o.accepted;
  aborted += o.aborted;
  aborted_cheat += o.aborted_cheat;
  malformed_delta += o.malformed_delta;
  protocol_violations += o.protocol_violations;
  gamma_equals_pi += o.gamma_equals_pi;
  received_with_gamma_pi += o.received_with_gamma_pi;
  aborted_with_gamma_pi += o.aborted_with_gamma_pi;
  hash_collisions += o.hash_collisions;
  premeasure_attempts += o.premeasure_attempts;
  premeasure_success += o.premeasure_success;
  alice_guesses += o.alice_guesses;
  alice_guesses_correct += o.alice_guesses_correct;
  correct_bits += o.correct_bits;
  decoded_bits += o.decoded_bits;
}

ExperimentStats run_experiment_range(const ProtocolParams& params, AliceStrategy alice,
                                     BobStrategy bob, std::uint64_t first, std::uint64_t last,
                                     std::uint64_t base_seed, unsigned parallelism) {
  params.validate();
  if (last < first) throw std::invalid_argument("run_experiment: empty range");
  if (parallelism == 0) parallelism = std::max(1u, std::thread::hardware_concurrency());

  ExperimentStats out;
  out.params = params;
  out.alice = alice;
  out.bob = bob;
  out.base_seed = base_seed;

  const std::uint64_t count = last - first;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(parallelism, std::max<std::uint64_t>(count, 1)));
  std::vector<ExperimentStats> partial(workers, out);
  std::atomic<std::uint64_t> next{first};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = next++; i < last; i = next++) {
        partial[w].add(run_session(params, alice, bob, derive_seed(base_seed, i)));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = last;
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& p : partial) out.merge(p);
  return out;
}

ExperimentStats run_experiment(const ProtocolParams& params, AliceStrategy alice, BobStrategy bob,
                               std::uint64_t sessions, std::uint64_t base_seed, unsigned parallelism) {
  if (sessions == 0) throw std::invalid_argument("run_experiment: need at least one session");
  return run_experiment_range(params, alice, bob, 0, sessions, base_seed, parallelism);
}

namespace {

Json rate_json(std::uint64_t k, std::uint64_t n) {
  const Interval ci = wilson_interval(k, n);
  return Json{{"count", k},
              {"of", n},
              {"rate", n ? static_cast<double>(k) / static_cast<double>(n) : 0.0},
              {"ci95", Json::array({ci.low, ci.high})}};
}

}  // namespace

Json stats_json(const ExperimentStats& s) {
  Json j;
  j["v"] = kTranscriptVersion;
  j["params"] = Json{{"n", s.params.n}, {"ell", s.params.ell},
                     {"threshold_sigmas", s.params.threshold_sigmas}, {"copies", s.params.copies}};
  j["strategy_alice"] = strategy_name(s.alice);
  j["strategy_bob"] = strategy_name(s.bob);
  j["base_seed"] = s.base_seed;
  j["sessions"] = s.sessions;
  j["received"] = rate_json(s.received, s.sessions);
  j["accepted"] = rate_json(s.accepted, s.sessions);
  j["aborted"] = rate_json(s.aborted, s.sessions);
  j["aborted_cheat"] = s.aborted_cheat;
  j["malformed_delta"] = s.malformed_delta;
  j["protocol_violations"] = s.protocol_violations;
  j["gamma_equals_pi"] = rate_json(s.gamma_equals_pi, s.sessions);
  j["received_given_gamma_pi"] = rate_json(s.received_with_gamma_pi, s.gamma_equals_pi);
  j["aborted_given_gamma_pi"] = rate_json(s.aborted_with_gamma_pi, s.gamma_equals_pi);
  j["hash_collisions"] = s.hash_collisions;
  j["premeasure_success"] = rate_json(s.premeasure_success, s.premeasure_attempts);
  j["alice_guess_correct"] = rate_json(s.alice_guesses_correct, s.alice_guesses);
  j["bit_accuracy"] = rate_json(s.correct_bits, s.decoded_bits);
  return j;
}

std::string stats_csv_header() {
  return "strategy_alice,strategy_bob,n,ell,threshold_sigmas,copies,base_seed,sessions,received,"
         "received_rate,received_ci_low,received_ci_high,aborted,aborted_rate,aborted_cheat,"
         "malformed_delta,protocol_violations,gamma_equals_pi,received_with_gamma_pi,"
         "aborted_with_gamma_pi,hash_collisions,premeasure_attempts,premeasure_success,"
         "bit_accuracy\n";
}

std::string stats_csv_row(const ExperimentStats& s) {
  auto rate = [](std::uint64_t k, std::uint64_t n) {
    return n ? static_cast<double>(k) / static_cast<double>(n) : 0.0;
  };
  const Interval ci = wilson_interval(s.received, s.sessions);
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "%s,%s,%d,%d,%.6g,%d,%llu,%llu,%llu,%.6f,%.6f,%.6f,%llu,%.6f,%llu,%llu,%llu,%llu,"
                "%llu,%llu,%llu,%llu,%llu,%.6f\n",
                std::string(strategy_name(s.alice)).c_str(), std::string(strategy_name(s.bob)).c_str(),
                s.params.n, s.params.ell, s.params.threshold_sigmas, s.params.copies,
                static_cast<unsigned long long>(s.base_seed),
                static_cast<unsigned long long>(s.sessions),
                static_cast<unsigned long long>(s.received), rate(s.received, s.sessions), ci.low,
                ci.high, static_cast<unsigned long long>(s.aborted), rate(s.aborted, s.sessions),
                static_cast<unsigned long long>(s.aborted_cheat),
                static_cast<unsigned long long>(s.malformed_delta),
                static_cast<unsigned long long>(s.protocol_violations),
                static_cast<unsigned long long>(s.gamma_equals_pi),
                static_cast<unsigned long long>(s.received_with_gamma_pi),
                static_cast<unsigned long long>(s.aborted_with_gamma_pi),
                static_cast<unsigned long long>(s.hash_collisions),
                static_cast<unsigned long long>(s.premeasure_attempts),
                static_cast<unsigned long long>(s.premeasure_success),
                rate(s.correct_bits, s.decoded_bits));
  return buf;
}

}  // namespace qot
