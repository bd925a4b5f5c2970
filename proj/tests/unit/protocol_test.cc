#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qot/protocol.h"
#include "qot/session.h"

namespace {

using qot::AliceStrategy;
using qot::BobStrategy;
using qot::Permutation;
using qot::ProtocolParams;
using qot::Side;

TEST(Params, Validation) {
  ProtocolParams p;
  EXPECT_NO_THROW(p.validate());
  for (int n : {4, 8, 12, 5, 2}) {
    p = ProtocolParams{};
    p.n = n;
    EXPECT_THROW(p.validate(), std::invalid_argument) << n;
  }
  for (int n : {6, 10, 14, 18}) {
    p = ProtocolParams{};
    p.n = n;
    EXPECT_NO_THROW(p.validate()) << n;
  }
  p = ProtocolParams{};
  p.ell = 31;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.ell = 6;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.threshold_sigmas = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = ProtocolParams{};
  p.copies = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Params, StrategyNames) {
  EXPECT_EQ(qot::parse_alice_strategy("invariant-cheat"), AliceStrategy::kInvariantCheat);
  EXPECT_EQ(qot::parse_alice_strategy("mixed-cheat"), AliceStrategy::kMixedCheat);
  EXPECT_EQ(qot::parse_bob_strategy("premeasure"), BobStrategy::kPremeasure);
  EXPECT_EQ(qot::strategy_name(AliceStrategy::kHonest), "honest");
  EXPECT_THROW(qot::parse_alice_strategy("evil"), std::invalid_argument);
}

TEST(StepValue, SetOnce) {
  qot::StepValue<int> v("x");
  EXPECT_FALSE(v.has_value());
  EXPECT_THROW(v.get(), std::logic_error);
  v.set(3);
  EXPECT_EQ(v.get(), 3);
  EXPECT_THROW(v.set(4), std::logic_error);
}

// Runs steps 4-6 with forced sides.
Permutation resolve(const Permutation& key, const Permutation& tau, Side alice_side, Side bob_side) {
  qot::Rng rng(1);
  qot::AliceState alice;
  alice.key.set(key);
  qot::BobState bob;
  bob.challenge.set(tau);
  const auto delta = qot::alice_respond(alice, tau, rng, alice_side);
  const auto gamma = qot::bob_resolve(bob, delta, rng, bob_side);
  EXPECT_TRUE(gamma.has_value());
  return *gamma;
}

TEST(Opening, AllFourSideCombinations) {
  qot::Rng rng(2);
  int generic = 0;
  for (int t = 0; t < 300; ++t) {
    const auto key = qot::sample_involution(rng, 6);
    const auto tau = qot::sample_symmetric(rng, 6);
    const auto inv = qot::inverse(tau);
    EXPECT_EQ(resolve(key, tau, Side::kRight, Side::kRight), key);
    EXPECT_EQ(resolve(key, tau, Side::kLeft, Side::kLeft), key);
    // δ = π∘τ resolved on the left: τ⁻¹∘π∘τ. δ = τ∘π resolved on the right: τ∘π∘τ⁻¹.
    const auto rl = resolve(key, tau, Side::kRight, Side::kLeft);
    const auto lr = resolve(key, tau, Side::kLeft, Side::kRight);
    EXPECT_EQ(rl, inv * key * tau);
    EXPECT_EQ(lr, tau * key * inv);
    EXPECT_TRUE(qot::is_fixed_point_free_involution(rl));
    EXPECT_TRUE(qot::is_fixed_point_free_involution(lr));
    generic += rl != key;
  }
  EXPECT_GT(generic, 250);
}

TEST(Opening, MalformedDelta) {
  qot::Rng rng(3);
  qot::BobState bob;
  const auto tau = Permutation::identity(6);
  bob.challenge.set(tau);
  EXPECT_FALSE(qot::bob_resolve(bob, Permutation::parse("(1 2 3)", 6), rng).has_value());
}

// |C(π)| / n! by brute force: the chance a uniform τ commutes with π.
double commuting_fraction(const Permutation& key) {
  const ref::Images k(key.images().begin(), key.images().end());
  std::size_t commuting = 0, total = 0;
  for (const auto& tau : ref::all_permutations(key.degree())) {
    commuting += ref::compose(tau, k) == ref::compose(k, tau);
    ++total;
  }
  return static_cast<double>(commuting) / static_cast<double>(total);
}

TEST(Opening, GammaEqualsKeyRate) {
  // Matched sides give γ = π; mismatched sides give a conjugate, which still
  // equals π when τ commutes with π. At n = 6 that is 48 of 720 choices.
  const double c = commuting_fraction(Permutation::parse("(1 2)(3 4)(5 6)", 6));
  EXPECT_NEAR(c, 48.0 / 720.0, 1e-15);
  const double expected = 0.5 + 0.5 * c;
  ProtocolParams p;
  int hits = 0;
  const int sessions = 10000;
  for (int i = 0; i < sessions; ++i) {
    const auto r = qot::run_session(p, AliceStrategy::kHonest, BobStrategy::kHonest, qot::derive_seed(99, i));
    ASSERT_TRUE(r.gamma.has_value());
    ASSERT_TRUE(qot::is_fixed_point_free_involution(*r.gamma));
    hits += r.gamma_equals_pi();
  }
  EXPECT_NEAR(hits / static_cast<double>(sessions), expected, 0.015);
}

TEST(Opening, RecheckWindow) {
  ProtocolParams p;  // ell 32: |d - 16| <= 3 * sqrt(8) = 8.485
  EXPECT_TRUE(qot::recheck_accepts(p, 16));
  EXPECT_TRUE(qot::recheck_accepts(p, 8));
  EXPECT_TRUE(qot::recheck_accepts(p, 24));
  EXPECT_FALSE(qot::recheck_accepts(p, 7));
  EXPECT_FALSE(qot::recheck_accepts(p, 25));
  EXPECT_FALSE(qot::recheck_accepts(p, 0));
  EXPECT_FALSE(qot::recheck_accepts(p, 32));
  // The zero-distance attack is caught once ell/2 > 3 sqrt(ell/4), i.e. ell > 9.
  for (int ell = 10; ell <= 64; ell += 2) {
    p.ell = ell;
    EXPECT_FALSE(qot::recheck_accepts(p, 0)) << ell;
  }
  p.ell = 8;
  EXPECT_TRUE(qot::recheck_accepts(p, 0));
}

TEST(Transfer, HonestPackage) {
  ProtocolParams p;
  qot::QuantumRegistry registry(1);
  qot::Rng rng(4);
  const qot::BitString ones(32, 1);
  auto t = qot::alice_transfer(p, ones, registry, rng);
  ASSERT_EQ(t.package.handles.size(), 32u);
  EXPECT_EQ(t.package.digest, qot::hash(t.package.spec, ones));
  qot::Inspector inspector(registry);
  for (auto h : t.package.handles) {
    const auto& s = inspector.current(h);
    ASSERT_TRUE(s.origin.has_value());
    EXPECT_EQ(s.origin->branch, qot::PmOutcome::kPlus);
    EXPECT_EQ(s.origin->key, t.state.key.get());
  }
  EXPECT_THROW(qot::alice_transfer(p, qot::BitString(31), registry, rng), std::invalid_argument);
}

TEST(Transfer, InvariantStatesAreEigenvectorsOfEveryMeasurement) {
  ProtocolParams p;
  qot::QuantumRegistry registry(1);
  qot::Rng rng(5);
  qot::BitString m(32);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint8_t>(i % 3 == 0);
  auto t = qot::cheating_alice_invariant(p, m, registry, rng);
  EXPECT_EQ(t.package.digest, qot::hash(t.package.spec, m));
  qot::Inspector inspector(registry);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& payload = inspector.current(t.package.handles[i]).payload;
    for (const auto& g : qot::enumerate_involutions_by_filter(6)) {
      const auto probs = qot::pm_probabilities(payload, g, 0);
      ASSERT_NEAR(m[i] ? probs.plus : probs.minus, 1.0, 1e-12);
    }
  }
}

TEST(Transfer, MixedStatesAreCoinFlips) {
  ProtocolParams p;
  qot::QuantumRegistry registry(1);
  qot::Rng rng(6);
  auto t = qot::cheating_alice_mixed(p, registry, rng);
  qot::Inspector inspector(registry);
  for (auto h : t.package.handles) {
    const auto& payload = inspector.current(h).payload;
    ASSERT_EQ(payload.support_size(), 1u);
    for (const auto& g : qot::enumerate_involutions_by_filter(6)) {
      ASSERT_NEAR(qot::pm_probabilities(payload, g, 0).plus, 0.5, 1e-12);
      ASSERT_NEAR(qot::pm_probabilities(qot::c_sgn(payload, 0), g, 0).plus, 0.5, 1e-12);
    }
  }
}

TEST(Sessions, HonestRecheckAbortRateAt64Bits) {
  ProtocolParams p;
  p.ell = 64;
  int matched = 0, aborted = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto r = qot::run_session(p, AliceStrategy::kHonest, BobStrategy::kHonest, qot::derive_seed(7, i));
    if (!r.gamma_equals_pi()) continue;
    ++matched;
    ASSERT_TRUE(r.bob_received);
    ASSERT_TRUE(r.hamming_d.has_value());
    aborted += r.terminal == qot::Terminal::kAbortedCheat;
  }
  EXPECT_LE(aborted / static_cast<double>(matched), 0.01);
}

TEST(Sessions, InvariantCheatIsAlwaysCaught) {
  ProtocolParams p;
  for (int i = 0; i < 200; ++i) {
    const auto r = qot::run_session(p, AliceStrategy::kInvariantCheat, BobStrategy::kHonest, qot::derive_seed(8, i));
    ASSERT_TRUE(r.bob_received);
    ASSERT_EQ(r.hamming_d, 0u);
    ASSERT_EQ(r.terminal, qot::Terminal::kAbortedCheat);
    ASSERT_TRUE(r.aborted());
  }
  ProtocolParams big;
  big.n = 10;
  EXPECT_THROW(qot::run_session(big, AliceStrategy::kInvariantCheat, BobStrategy::kHonest, 1),
               std::invalid_argument);
}

TEST(Sessions, MixedCheatIsNotReceived) {
  ProtocolParams p;
  int received = 0;
  for (int i = 0; i < 2000; ++i) {
    received += qot::run_session(p, AliceStrategy::kMixedCheat, BobStrategy::kHonest, qot::derive_seed(9, i))
                    .bob_received;
  }
  EXPECT_LE(received, 2);
}

TEST(Sessions, PremeasuringBob) {
  ProtocolParams p;
  qot::SessionControls true_key;
  true_key.premeasure_key = qot::PremeasureKey::kTrueKey;
  qot::SessionControls wrong_key;
  wrong_key.premeasure_key = qot::PremeasureKey::kWrongKey;
  std::size_t correct = 0, total = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = qot::run_session(p, AliceStrategy::kHonest, BobStrategy::kPremeasure, qot::derive_seed(10, i), true_key);
    ASSERT_EQ(a.premeasure_success, true);
    const auto b = qot::run_session(p, AliceStrategy::kHonest, BobStrategy::kPremeasure, qot::derive_seed(11, i), wrong_key);
    // Per-bit agreement of the premeasured guess with the message.
    const auto& events = b.transcript.events();
    for (const auto& e : events) {
      if (e.name != "premeasure") continue;
      const auto guess = qot::from_hex(e.payload["guess"]["hex"].get<std::string>(), 32);
      correct += 32 - qot::hamming_distance(guess, b.message);
      total += 32;
    }
  }
  ASSERT_EQ(total, 300u * 32u);
  EXPECT_NEAR(correct / static_cast<double>(total), 0.5, 0.02);

  // Random guess: 1/15 + (14/15) 2^-16, three binomial sd.
  const double expected = 1.0 / 15 + (14.0 / 15) * std::ldexp(1.0, -16);
  int success = 0;
  const int sessions = 10000;
  for (int i = 0; i < sessions; ++i) {
    success += *qot::run_session(p, AliceStrategy::kHonest, BobStrategy::kPremeasure, qot::derive_seed(12, i))
                    .premeasure_success;
  }
  const double sd = std::sqrt(expected * (1 - expected) / sessions);
  EXPECT_NEAR(success / static_cast<double>(sessions), expected, 3 * sd);
}

TEST(Sessions, MultipleCopiesStillDecode) {
  ProtocolParams p;
  p.copies = 3;
  for (int i = 0; i < 50; ++i) {
    const auto r = qot::run_session(p, AliceStrategy::kHonest, BobStrategy::kHonest, qot::derive_seed(13, i));
    ASSERT_EQ(r.handles.size(), 96u);
    if (r.gamma_equals_pi()) ASSERT_TRUE(r.bob_received);
  }
}

}  // namespace
