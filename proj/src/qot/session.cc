#include "qot/session.h"

#include <cmath>

namespace qot {

namespace {

Json bits_json(const BitString& bits) {
  return Json{{"bits", bits.size()}, {"hex", to_hex(bits)}};
}

Json params_json(const ProtocolParams& p) {
  return Json{{"n", p.n}, {"ell", p.ell}, {"threshold_sigmas", p.threshold_sigmas}, {"copies", p.copies}};
}

Json seeds_json(const SessionSeeds& s) {
  return Json{{"session", s.session}, {"alice", s.alice}, {"bob", s.bob},
              {"nature", s.nature}, {"input", s.input}};
}

void play(SessionResult& r, const SessionControls& controls) {
  const ProtocolParams& params = r.params;
  QuantumRegistry& registry = *r.registry;
  SessionTranscript& t = r.transcript;
  Rng alice_rng(r.seeds.alice);
  Rng bob_rng(r.seeds.bob);
  Rng input_rng(r.seeds.input);

  BitString message = controls.message.value_or(
      random_bits(input_rng, static_cast<std::size_t>(params.ell)));

  // Steps 1-3.
  AliceTransfer transfer = [&] {
    switch (r.alice_strategy) {
      case AliceStrategy::kHonest: return alice_transfer(params, message, registry, alice_rng);
      case AliceStrategy::kInvariantCheat:
        return cheating_alice_invariant(params, message, registry, alice_rng);
      case AliceStrategy::kMixedCheat: return cheating_alice_mixed(params, registry, alice_rng);
    }
    throw std::logic_error("unhandled Alice strategy");
  }();
  AliceState& alice = transfer.state;
  TransferPackage& package = transfer.package;
  r.alice_key = alice.key.get();
  r.message = alice.message.get();
  r.digest_source = alice.hashed.get();
  r.alice_guess_received = alice.guess_received;
  r.handles = package.handles;

  t.local(1, Party::kAlice, "key", Json{{"cycles", to_cycle_string(alice.key.get())}});
  t.local(2, Party::kAlice, "prepared",
          Json{{"message", bits_json(alice.message.get())}, {"samples", package.handles.size()}});
  std::vector<std::uint64_t> ids;
  for (HandleId h : package.handles) {
    registry.transfer(Party::kAlice, Party::kBob, h);
    ids.push_back(h.value);
  }
  t.handle_transfer(3, Party::kAlice, std::move(ids));
  t.classical(3, Party::kAlice, "digest", bits_json(package.digest));
  t.classical(3, Party::kAlice, "hash_seed", bits_json(package.spec.seed));

  BobState bob;
  if (r.bob_strategy == BobStrategy::kPremeasure) {
    std::optional<Permutation> forced;
    if (controls.premeasure_key == PremeasureKey::kTrueKey) forced = alice.key.get();
    if (controls.premeasure_key == PremeasureKey::kWrongKey) {
      Rng pick(derive_seed(r.seeds.bob, 1));
      Permutation k = sample_involution(pick, params.n);
      while (k == alice.key.get()) k = sample_involution(pick, params.n);
      forced = k;
    }
    auto pre = cheating_bob_premeasure(params, registry, package, bob_rng, forced);
    r.premeasure_success = pre.digest_matched;
    t.measurement(3, Party::kBob, "premeasure",
                  Json{{"key", to_cycle_string(pre.guess_key)}, {"guess", bits_json(pre.guess)},
                       {"digest_matched", pre.digest_matched}});
  }

  // Steps 4-6.
  const Permutation tau = bob_challenge(params, bob, bob_rng);
  t.classical(4, Party::kBob, "tau", Json{{"cycles", to_cycle_string(tau)}});
  const Permutation delta = alice_respond(alice, tau, alice_rng, controls.alice_side);
  t.local(5, Party::kAlice, "side", Json{{"side", side_name(alice.side.get())}});
  t.classical(5, Party::kAlice, "delta", Json{{"cycles", to_cycle_string(delta)}});
  const auto gamma = bob_resolve(bob, delta, bob_rng, controls.bob_side);
  t.local(6, Party::kBob, "side", Json{{"side", side_name(bob.side.get())}});
  if (!gamma) {
    r.terminal = Terminal::kMalformedDelta;
    t.local(6, Party::kBob, "malformed_delta", Json{{"cycles", to_cycle_string(delta)}});
    return;
  }
  r.gamma = *gamma;
  t.local(6, Party::kBob, "gamma", Json{{"cycles", to_cycle_string(*gamma)}});

  // Steps 7-9.
  const OpenResult open = bob_open(params, bob, registry, package, bob_rng);
  r.decoded = bob.decoded.get();
  r.bob_received = open.digest_matched;
  r.terminal = open.terminal;
  r.hamming_d = open.hamming_d;
  t.measurement(7, Party::kBob, "decode",
                Json{{"key", to_cycle_string(*gamma)}, {"result", bits_json(bob.decoded.get())}});
  t.local(8, Party::kBob, "digest_check", Json{{"matched", open.digest_matched}});
  if (open.hamming_d) {
    t.measurement(9, Party::kBob, "recheck",
                  Json{{"key", to_cycle_string(bob.recheck_key.get())},
                       {"result", bits_json(bob.recheck.get())},
                       {"hamming_d", *open.hamming_d},
                       {"accepted", open.terminal == Terminal::kAccepted}});
  }
}

}  // namespace

SessionSeeds derive_session_seeds(std::uint64_t session_seed) {
  return SessionSeeds{session_seed, derive_seed(session_seed, 0, 1), derive_seed(session_seed, 0, 2),
                      derive_seed(session_seed, 0, 3), derive_seed(session_seed, 0, 4)};
}

std::size_t SessionResult::correct_bits() const {
  if (!decoded || decoded->size() != message.size()) return 0;
  return message.size() - hamming_distance(*decoded, message);
}

SessionResult run_session(const ProtocolParams& params, AliceStrategy alice, BobStrategy bob,
                          std::uint64_t seed, const SessionControls& controls) {
  params.validate();
  if (alice == AliceStrategy::kInvariantCheat && params.n > 8) {
    throw std::invalid_argument("invariant-cheat strategy supports n <= 8 only");
  }
  if (controls.message && controls.message->size() != static_cast<std::size_t>(params.ell)) {
    throw std::invalid_argument("forced message length differs from ell");
  }
  SessionResult r;
  r.params = params;
  r.alice_strategy = alice;
  r.bob_strategy = bob;
  r.seeds = derive_session_seeds(seed);
  r.registry = std::make_unique<QuantumRegistry>(r.seeds.nature);
  r.transcript.set_header(Json{{"params", params_json(params)},
                               {"strategy_alice", strategy_name(alice)},
                               {"strategy_bob", strategy_name(bob)},
                               {"seeds", seeds_json(r.seeds)}});
  try {
    play(r, controls);
  } catch (const std::logic_error& e) {
    r.terminal = Terminal::kProtocolViolation;
    r.violation = e.what();
  }
  Json verdict{{"terminal", terminal_name(r.terminal)}, {"bob_received", r.bob_received}};
  if (r.hamming_d) verdict["hamming_d"] = *r.hamming_d;
  if (!r.violation.empty()) verdict["violation"] = r.violation;
  r.transcript.verdict(std::move(verdict));
  return r;
}

Json session_summary_json(const SessionResult& r, std::uint64_t session_id) {
  Json j;
  j["session_id"] = session_id;
  j["strategy_alice"] = strategy_name(r.alice_strategy);
  j["strategy_bob"] = strategy_name(r.bob_strategy);
  j["gamma_equals_pi"] = r.gamma_equals_pi();
  j["bob_received"] = r.bob_received;
  j["aborted"] = r.aborted();
  j["terminal"] = terminal_name(r.terminal);
  j["hamming_d"] = r.hamming_d ? Json(*r.hamming_d) : Json(nullptr);
  j["hash_collision"] = r.hash_collision();
  j["seeds"] = seeds_json(r.seeds);
  if (r.premeasure_success) j["premeasure_success"] = *r.premeasure_success;
  if (r.alice_guess_received) j["alice_guess_received"] = *r.alice_guess_received;
  return j;
}

std::vector<std::string> inspector_verify(const SessionResult& r) {
  std::vector<std::string> issues;
  if (r.gamma && !is_fixed_point_free_involution(*r.gamma)) {
    issues.push_back("gamma " + to_cycle_string(*r.gamma) + " is not a fixed-point-free involution");
  }
  if (!r.violation.empty()) issues.push_back("protocol violation: " + r.violation);
  if (r.hash_collision()) {
    issues.push_back("hash collision: decoded " + to_hex(*r.decoded) + " but " +
                     to_hex(r.digest_source) + " was hashed");
  }
  const Inspector inspector(*r.registry);
  const std::size_t copies = static_cast<std::size_t>(r.params.copies);
  const double half = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < r.handles.size(); ++k) {
    const HandleId h = r.handles[k];
    const std::string where = "handle " + std::to_string(h.value);
    const QscdSample& s = inspector.as_sent(h);
    if (s.payload.support_size() != 2) {
      issues.push_back(where + ": payload support " + std::to_string(s.payload.support_size()) +
                       " != 2");
      continue;
    }
    for (const auto& term : s.payload.terms()) {
      if (std::abs(std::abs(term.amplitude) - half) > kNormTolerance) {
        issues.push_back(where + ": amplitude magnitude is not 1/sqrt(2)");
        break;
      }
    }
    if (!s.origin) {
      issues.push_back(where + ": no preparation record");
      continue;
    }
    if (r.alice_key && s.origin->key != *r.alice_key) {
      issues.push_back(where + ": prepared with a key other than the session key");
    }
    const SparseState expected = flip_pair_state(s.origin->sigma, s.origin->key, s.origin->branch);
    if (distance_up_to_phase(expected, s.payload) > kNormTolerance) {
      issues.push_back(where + ": payload differs from its recorded preparation");
    }
    const std::size_t bit_index = k / copies;
    if (bit_index < r.message.size()) {
      const PmOutcome want = r.message[bit_index] ? PmOutcome::kPlus : PmOutcome::kMinus;
      if (s.origin->branch != want) issues.push_back(where + ": branch does not encode its message bit");
    }
  }
  return issues;
}

EnsembleComparison inspector_oracle_check(const SessionResult& r, PmOutcome branch) {
  if (!r.alice_key) throw std::invalid_argument("inspector_oracle_check: session has no key");
  const Inspector inspector(*r.registry);
  std::vector<SparseState> samples;
  const std::size_t copies = static_cast<std::size_t>(r.params.copies);
  for (std::size_t k = 0; k < r.handles.size(); ++k) {
    const bool one = r.message[k / copies] != 0;
    if (one == (branch == PmOutcome::kPlus)) samples.push_back(inspector.as_sent(r.handles[k]).payload);
  }
  if (samples.empty()) throw std::invalid_argument("inspector_oracle_check: no samples on this branch");
  const auto kind = branch == PmOutcome::kPlus ? EnsembleKind::kPlus : EnsembleKind::kMinus;
  return compare_ensemble(samples, oracle_density(kind, *r.alice_key));
}

std::string dump_transmitted_states(const SessionResult& r) {
  const Inspector inspector(*r.registry);
  std::string out;
  for (HandleId h : r.handles) {
    out += "# handle " + std::to_string(h.value) + "\n";
    out += dump(inspector.as_sent(h).payload);
  }
  return out;
}

}  // namespace qot
