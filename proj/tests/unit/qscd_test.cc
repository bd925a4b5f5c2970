#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qot/qscd.h"

namespace {

using qot::Amplitude;
using qot::Permutation;
using qot::PmOutcome;
using qot::SparseState;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SparseState two_terms(int a0, Permutation r0, Permutation r1, int b0, Permutation s0, Permutation s1,
                      double cb = 1.0) {
  std::vector<Permutation> x{r0, r1}, y{s0, s1};
  const auto a = SparseState::basis(a0, x);
  const auto b = SparseState::basis(b0, y);
  std::vector<SparseState::Term> terms;
  for (const auto& t : a.terms()) terms.push_back({t.config, kInvSqrt2});
  for (const auto& t : b.terms()) terms.push_back({t.config, cb * kInvSqrt2});
  return SparseState::from_terms(a.layout(), terms);
}

double dist(const SparseState& a, const SparseState& b) { return qot::distance_up_to_phase(a, b); }

// Exact, not up to phase.
double exact_dist(const SparseState& a, const SparseState& b) {
  std::vector<SparseState::Term> terms(a.terms().begin(), a.terms().end());
  for (const auto& t : b.terms()) terms.push_back({t.config, -t.amplitude});
  return std::sqrt(SparseState::from_terms(a.layout(), terms).norm_squared());
}

SparseState random_payload(qot::Rng& rng, int n, int support) {
  std::vector<SparseState::Term> terms;
  for (int k = 0; k < support; ++k) {
    qot::BasisConfig c;
    c.regs[0] = qot::encode(qot::sample_symmetric(rng, n)).value;
    terms.push_back({c, Amplitude(qot::uniform_unit(rng) - 0.5, qot::uniform_unit(rng) - 0.5)});
  }
  return SparseState::from_terms({false, 1, n}, terms).normalized();
}

const Permutation kPi = Permutation::parse("(1 3)(2 6)(4 5)", 6);

TEST(Qscd, GenerationTraceFollowsTheCircuit) {
  const auto id = Permutation::identity(6);
  const auto sigma = Permutation::parse("(1 2 3)(4 5)", 6);
  const auto trace = qot::generation_trace(kPi, sigma);
  ASSERT_EQ(trace.size(), 6u);
  std::vector<Permutation> start{id, sigma};
  EXPECT_LT(exact_dist(trace[0], SparseState::basis(0, start)), 1e-12);
  EXPECT_LT(exact_dist(trace[1], two_terms(0, id, sigma, 1, id, sigma)), 1e-12);
  EXPECT_LT(exact_dist(trace[2], two_terms(0, id, sigma, 1, kPi, sigma)), 1e-12);
  EXPECT_LT(exact_dist(trace[3], two_terms(0, id, sigma, 0, kPi, sigma)), 1e-12);
  EXPECT_LT(exact_dist(trace[4], two_terms(0, sigma, id, 0, sigma, kPi)), 1e-12);
  EXPECT_LT(exact_dist(trace[5], two_terms(0, sigma, sigma, 0, sigma, sigma * kPi)), 1e-12);
  const auto sample = qot::generate_plus_from(kPi, sigma);
  EXPECT_LT(exact_dist(sample.payload, qot::flip_pair_state(sigma, kPi, PmOutcome::kPlus)), 1e-12);
  ASSERT_TRUE(sample.origin.has_value());
  EXPECT_EQ(sample.origin->sigma, sigma);
  EXPECT_EQ(sample.origin->branch, PmOutcome::kPlus);
}

TEST(Qscd, IdentitySigma) {
  const auto id = Permutation::identity(6);
  const auto s = qot::generate_plus_from(kPi, id);
  EXPECT_LT(exact_dist(s.payload, qot::flip_pair_state(id, kPi, PmOutcome::kPlus)), 1e-12);
  EXPECT_EQ(s.payload.support_size(), 2u);
}

TEST(Qscd, RejectsNonTrapdoorKey) {
  qot::Rng rng(1);
  EXPECT_THROW(qot::generate_plus(Permutation::parse("(1 2 3)(4 5)", 6), rng), std::invalid_argument);
  EXPECT_THROW(qot::generate_plus(Permutation::parse("(1 2)(3 4)", 6), rng), std::invalid_argument);
}

TEST(Qscd, HonestSamplesHaveTwoTerms) {
  qot::Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto s = qot::generate_plus(kPi, rng);
    ASSERT_EQ(s.payload.support_size(), 2u);
    for (const auto& term : s.payload.terms()) ASSERT_NEAR(std::abs(term.amplitude), kInvSqrt2, 1e-12);
    ASSERT_NEAR(s.payload.norm_squared(), 1.0, 1e-12);
  }
}

TEST(Qscd, ConvertSign) {
  const auto id = Permutation::identity(6);
  const auto plus = qot::generate_plus_from(kPi, id);
  const auto minus = qot::convert_sign(plus);
  EXPECT_LT(exact_dist(minus.payload, qot::flip_pair_state(id, kPi, PmOutcome::kMinus)), 1e-12);
  EXPECT_EQ(minus.origin->branch, PmOutcome::kMinus);
  const auto odd = Permutation::parse("(1 2)", 6);
  const auto m2 = qot::convert_sign(qot::generate_plus_from(kPi, odd));
  EXPECT_LT(exact_dist(m2.payload, qot::flip_pair_state(odd, kPi, PmOutcome::kMinus).scaled(-1.0)),
            1e-12);
  qot::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto s = qot::generate_plus(kPi, rng);
    ASSERT_LT(dist(qot::convert_sign(qot::convert_sign(s)).payload, s.payload), 1e-12);
    const auto basis = qot::basis_state(qot::sample_symmetric(rng, 6));
    ASSERT_LT(dist(qot::convert_sign({basis, std::nullopt}).payload, basis), 1e-12);
  }
}

TEST(Qscd, DistinguisherWithTheKey) {
  qot::Rng rng(4);
  for (int t = 0; t < 500; ++t) {
    const auto plus = qot::generate_plus(kPi, rng);
    const auto minus = qot::convert_sign(plus);
    const auto a = qot::distinguish_circuit(kPi, plus, rng);
    ASSERT_EQ(a.label, 0);
    ASSERT_LT(exact_dist(a.sample.payload, plus.payload), 1e-12);
    const auto b = qot::distinguish_circuit(kPi, minus, rng);
    ASSERT_EQ(b.label, 1);
    ASSERT_LT(exact_dist(b.sample.payload, minus.payload), 1e-12);
    ASSERT_EQ(qot::measure_bit(kPi, plus, rng).label, 0);
    ASSERT_EQ(qot::measure_bit(kPi, minus, rng).label, 1);
  }
}

TEST(Qscd, DistinguisherWithAWrongKey) {
  qot::Rng rng(5);
  int zeros = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    const auto key = qot::sample_involution(rng, 6);
    auto wrong = qot::sample_involution(rng, 6);
    while (wrong == key) wrong = qot::sample_involution(rng, 6);
    zeros += qot::distinguish_circuit(wrong, qot::generate_plus(key, rng), rng).label == 0;
  }
  EXPECT_NEAR(zeros / static_cast<double>(trials), 0.5, 0.02);
}

TEST(Qscd, CircuitAndMeasurementAreEquivalent) {
  qot::Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const auto key = qot::sample_involution(rng, 6);
    const auto s = random_payload(rng, 6, 1 + static_cast<int>(qot::uniform_below(rng, 12)));
    const auto pc = qot::distinguish_probabilities(key, s);
    const auto pm = qot::pm_probabilities(s, key, 0);
    ASSERT_NEAR(pc[0], pm.plus, 1e-9);
    ASSERT_NEAR(pc[1], pm.minus, 1e-9);
    for (int label = 0; label < 2; ++label) {
      const double p = label == 0 ? pm.plus : pm.minus;
      if (p < 1e-9) continue;
      const auto branch = label == 0 ? PmOutcome::kPlus : PmOutcome::kMinus;
      ASSERT_LT(dist(qot::distinguish_collapse(key, s, label), qot::collapse_pm(s, key, 0, branch)), 1e-9);
    }
  }
}

TEST(Qscd, UniformSuperpositionAlwaysReadsPlus) {
  const auto u = qot::uniform_superposition(6);
  for (const auto& key : qot::enumerate_involutions_by_filter(6)) {
    ASSERT_NEAR(qot::pm_probabilities(u, key, 0).plus, 1.0, 1e-12);
    ASSERT_NEAR(qot::distinguish_probabilities(key, u)[0], 1.0, 1e-12);
  }
}

TEST(Qscd, EncodeDecodeRoundTrip) {
  EXPECT_EQ(qot::decode_bit(PmOutcome::kPlus), 1);
  EXPECT_EQ(qot::decode_bit(PmOutcome::kMinus), 0);
  qot::Rng rng(7);
  int failures = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const auto key = qot::sample_involution(rng, 6);
    for (int i = 0; i < 32; ++i) {
      const int bit = qot::coin(rng) ? 1 : 0;
      const auto s = qot::encode_bit(bit, key, rng);
      failures += qot::decode_bit(qot::measure_bit(key, s, rng).outcome()) != bit;
    }
  }
  EXPECT_EQ(failures, 0);
  EXPECT_THROW(qot::encode_bit(2, kPi, rng), std::invalid_argument);
}

TEST(Qscd, ExactWrongKeyNormIsOneHalf) {
  qot::Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const auto key = qot::sample_involution(rng, 6);
    auto wrong = qot::sample_involution(rng, 6);
    while (wrong == key) wrong = qot::sample_involution(rng, 6);
    const auto s = qot::generate_plus(key, rng);
    ASSERT_NEAR(qot::pm_probabilities(s.payload, wrong, 0).plus, 0.5, 1e-12);
    ASSERT_NEAR(qot::pm_probabilities(qot::convert_sign(s).payload, wrong, 0).minus, 0.5, 1e-12);
  }
}

TEST(Qscd, RepeatedMeasurementIsStable) {
  qot::Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const auto key = qot::sample_involution(rng, 6);
    const auto s = qot::QscdSample{random_payload(rng, 6, 5), std::nullopt};
    const auto first = qot::measure_bit(key, s, rng);
    const auto second = qot::measure_bit(key, first.sample, rng);
    ASSERT_EQ(first.label, second.label);
    ASSERT_LT(exact_dist(first.sample.payload, second.sample.payload), 1e-12);
  }
}

}  // namespace
