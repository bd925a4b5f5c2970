#include "qot/sparse_state.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qot {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_ancilla(const SparseState& s, const char* op) {
  if (!s.layout().has_ancilla) {
    throw std::invalid_argument(std::string(op) + ": state has no ancilla");
  }
}

void require_register(const SparseState& s, int reg, const char* op) {
  if (reg < 0 || reg >= s.layout().perm_registers) {
    throw std::invalid_argument(std::string(op) + ": register " + std::to_string(reg) +
                                " out of range");
  }
}

void require_distinct(const SparseState& s, int a, int b, const char* op) {
  require_register(s, a, op);
  require_register(s, b, op);
  if (a == b) throw std::invalid_argument(std::string(op) + ": registers must differ");
}

void require_degree(const SparseState& s, const Permutation& p, const char* op) {
  if (p.degree() != s.layout().n) {
    throw std::invalid_argument(std::string(op) + ": permutation degree mismatch");
  }
}

std::uint64_t rank_of(const Permutation& p) { return encode(p).value; }

// Applies a map to every basis configuration (one output per input term).
template <typename F>
SparseState map_terms(const SparseState& s, F&& f) {
  std::vector<SparseState::Term> out;
  out.reserve(s.support_size());
  for (const auto& t : s.terms()) out.push_back(f(t));
  return SparseState::from_terms(s.layout(), std::move(out));
}

}  // namespace

SparseState SparseState::basis(int ancilla, std::span<const Permutation> regs) {
  if (regs.empty() || regs.size() > static_cast<std::size_t>(kMaxPermRegisters)) {
    throw std::invalid_argument("basis: need 1.." + std::to_string(kMaxPermRegisters) +
                                " permutation registers");
  }
  if (ancilla < -1 || ancilla > 1) throw std::invalid_argument("basis: ancilla must be -1, 0 or 1");
  RegisterLayout layout{ancilla >= 0, static_cast<int>(regs.size()), regs.front().degree()};
  BasisConfig config;
  config.ancilla = static_cast<std::uint8_t>(ancilla > 0 ? 1 : 0);
  for (std::size_t r = 0; r < regs.size(); ++r) {
    if (regs[r].degree() != layout.n) throw std::invalid_argument("basis: mixed degrees");
    config.regs[r] = rank_of(regs[r]);
  }
  return SparseState(layout, {Term{config, 1.0}});
}

SparseState SparseState::from_terms(const RegisterLayout& layout, std::vector<Term> terms) {
  const auto less = [](const Term& a, const Term& b) { return a.config < b.config; };
  // Callers often pass two sorted runs back to back; merge those in linear time.
  const auto split = std::is_sorted_until(terms.begin(), terms.end(), less);
  if (split != terms.end()) {
    if (std::is_sorted(split, terms.end(), less)) {
      std::inplace_merge(terms.begin(), split, terms.end(), less);
    } else {
      std::sort(terms.begin(), terms.end(), less);
    }
  }
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().config == t.config) {
      merged.back().amplitude += t.amplitude;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return std::abs(t.amplitude) < kPruneThreshold; });
  return SparseState(layout, std::move(merged));
}

double SparseState::norm_squared() const {
  double total = 0;
  for (const auto& t : terms_) total += std::norm(t.amplitude);
  return total;
}

SparseState SparseState::normalized() const {
  const double n2 = norm_squared();
  if (n2 < kPruneThreshold * kPruneThreshold) {
    throw std::domain_error("cannot normalize a zero state");
  }
  return scaled(1.0 / std::sqrt(n2));
}

SparseState SparseState::scaled(Amplitude factor) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.amplitude *= factor;
  return from_terms(layout_, std::move(out));
}

Permutation SparseState::register_value(const BasisConfig& config, int reg) const {
  return decode(PermIndex{config.regs[static_cast<std::size_t>(reg)], layout_.n});
}

SparseState uniform_superposition(int n) {
  const std::uint64_t size = factorial(n);
  if (size > 40320) throw std::invalid_argument("uniform superposition limited to n <= 8");
  const double amp = 1.0 / std::sqrt(static_cast<double>(size));
  std::vector<SparseState::Term> terms;
  terms.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    BasisConfig c;
    c.regs[0] = i;
    terms.push_back({c, amp});
  }
  return SparseState::from_terms(RegisterLayout{false, 1, n}, std::move(terms));
}

SparseState basis_state(const Permutation& sigma) {
  return SparseState::basis(-1, std::span<const Permutation>(&sigma, 1));
}

SparseState flip_pair_state(const Permutation& sigma, const Permutation& pi, PmOutcome branch) {
  const double s = branch == PmOutcome::kPlus ? 1.0 : -1.0;
  BasisConfig a, b;
  a.regs[0] = rank_of(sigma);
  b.regs[0] = rank_of(compose(sigma, pi));
  return SparseState::from_terms(RegisterLayout{false, 1, sigma.degree()},
                                 {{a, kInvSqrt2}, {b, s * kInvSqrt2}});
}

SparseState hadamard_ancilla(const SparseState& s) {
  require_ancilla(s, "hadamard_ancilla");
  std::vector<SparseState::Term> out;
  out.reserve(2 * s.support_size());
  for (const auto& t : s.terms()) {
    BasisConfig zero = t.config, one = t.config;
    zero.ancilla = 0;
    one.ancilla = 1;
    const double sign = t.config.ancilla ? -1.0 : 1.0;
    out.push_back({zero, t.amplitude * kInvSqrt2});
    out.push_back({one, sign * t.amplitude * kInvSqrt2});
  }
  return SparseState::from_terms(s.layout(), std::move(out));
}

SparseState c_pi(const SparseState& s, const Permutation& pi, int target) {
  require_ancilla(s, "c_pi");
  require_register(s, target, "c_pi");
  require_degree(s, pi, "c_pi");
  return map_terms(s, [&](const SparseState::Term& t) {
    if (!t.config.ancilla) return t;
    auto out = t;
    auto& reg = out.config.regs[static_cast<std::size_t>(target)];
    reg = rank_times(reg, pi);
    return out;
  });
}

SparseState c_one(const SparseState& s, int target) {
  require_ancilla(s, "c_one");
  require_register(s, target, "c_one");
  return map_terms(s, [&](const SparseState::Term& t) {
    auto out = t;
    // Rank 0 is the identity.
    if (t.config.regs[static_cast<std::size_t>(target)] != 0) out.config.ancilla ^= 1;
    return out;
  });
}

SparseState c_compose_right(const SparseState& s, int src, int dst) {
  require_distinct(s, src, dst, "c_compose_right");
  return map_terms(s, [&](const SparseState::Term& t) {
    auto out = t;
    out.config.regs[static_cast<std::size_t>(dst)] =
        rank_of(compose(s.register_value(t.config, src), s.register_value(t.config, dst)));
    return out;
  });
}

SparseState c_compose_left(const SparseState& s, int src, int dst) {
  require_distinct(s, src, dst, "c_compose_left");
  return map_terms(s, [&](const SparseState::Term& t) {
    auto out = t;
    out.config.regs[static_cast<std::size_t>(dst)] =
        rank_of(compose(s.register_value(t.config, dst), s.register_value(t.config, src)));
    return out;
  });
}

SparseState c_swap(const SparseState& s, int r1, int r2) {
  require_distinct(s, r1, r2, "c_swap");
  return map_terms(s, [&](const SparseState::Term& t) {
    auto out = t;
    std::swap(out.config.regs[static_cast<std::size_t>(r1)],
              out.config.regs[static_cast<std::size_t>(r2)]);
    return out;
  });
}

SparseState c_sgn(const SparseState& s, int target) {
  require_register(s, target, "c_sgn");
  return map_terms(s, [&](const SparseState::Term& t) {
    auto out = t;
    if (sign(s.register_value(t.config, target)) < 0) out.amplitude = -out.amplitude;
    return out;
  });
}

SparseState apply_flip(const SparseState& s, const Permutation& pi, int target) {
  require_register(s, target, "apply_flip");
  require_degree(s, pi, "apply_flip");
  return map_terms(s, [&](const SparseState::Term& t) {
    auto out = t;
    auto& reg = out.config.regs[static_cast<std::size_t>(target)];
    reg = rank_times(reg, pi);
    return out;
  });
}

namespace {

// (s ± flipped)/2 where flipped = R_π s.
SparseState combine_with_flip(const SparseState& s, const SparseState& flipped, PmOutcome branch) {
  const double sign = branch == PmOutcome::kPlus ? 0.5 : -0.5;
  std::vector<SparseState::Term> out;
  out.reserve(2 * s.support_size());
  for (const auto& t : s.terms()) out.push_back({t.config, 0.5 * t.amplitude});
  for (const auto& t : flipped.terms()) out.push_back({t.config, sign * t.amplitude});
  return SparseState::from_terms(s.layout(), std::move(out));
}

}  // namespace

SparseState project_pm(const SparseState& s, const Permutation& pi, int target,
                       PmOutcome branch) {
  return combine_with_flip(s, apply_flip(s, pi, target), branch);
}

PmProbabilities pm_probabilities(const SparseState& s, const Permutation& pi, int target) {
  const SparseState flipped = apply_flip(s, pi, target);
  return {combine_with_flip(s, flipped, PmOutcome::kPlus).norm_squared(),
          combine_with_flip(s, flipped, PmOutcome::kMinus).norm_squared()};
}

SparseState collapse_pm(const SparseState& s, const Permutation& pi, int target,
                        PmOutcome branch) {
  return project_pm(s, pi, target, branch).normalized();
}

PmMeasurement measure_pm(const SparseState& s, const Permutation& pi, int target, Rng& rng) {
  if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
    throw std::domain_error("measure_pm: input state is not normalized");
  }
  const SparseState flipped = apply_flip(s, pi, target);
  SparseState plus = combine_with_flip(s, flipped, PmOutcome::kPlus);
  SparseState minus = combine_with_flip(s, flipped, PmOutcome::kMinus);
  const double p_plus = plus.norm_squared();
  const double p_minus = minus.norm_squared();
  if (p_plus + p_minus < kNormTolerance) {
    throw std::domain_error("measure_pm: both projections vanish");
  }
  // Always draw, so the stream advances identically on deterministic inputs.
  const double u = uniform_unit(rng) * (p_plus + p_minus);
  if (u < p_plus) return {PmOutcome::kPlus, plus.normalized()};
  return {PmOutcome::kMinus, minus.normalized()};
}

Amplitude inner_product(const SparseState& a, const SparseState& b) {
  if (!(a.layout() == b.layout())) throw std::invalid_argument("inner_product: layout mismatch");
  Amplitude total = 0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->config < ib->config) {
      ++ia;
    } else if (ib->config < ia->config) {
      ++ib;
    } else {
      total += std::conj(ia->amplitude) * ib->amplitude;
      ++ia;
      ++ib;
    }
  }
  return total;
}

SparseState add_ancilla(const SparseState& s) {
  if (s.layout().has_ancilla) throw std::invalid_argument("add_ancilla: ancilla already present");
  RegisterLayout layout = s.layout();
  layout.has_ancilla = true;
  std::vector<SparseState::Term> out(s.terms().begin(), s.terms().end());
  for (auto& t : out) t.config.ancilla = 0;
  return SparseState::from_terms(layout, std::move(out));
}

SparseState drop_ancilla(const SparseState& s) {
  require_ancilla(s, "drop_ancilla");
  RegisterLayout layout = s.layout();
  layout.has_ancilla = false;
  std::vector<SparseState::Term> out(s.terms().begin(), s.terms().end());
  const std::uint8_t first = out.empty() ? 0 : out.front().config.ancilla;
  for (auto& t : out) {
    if (t.config.ancilla != first) {
      throw std::domain_error("drop_ancilla: ancilla is not in a basis state");
    }
    t.config.ancilla = 0;
  }
  return SparseState::from_terms(layout, std::move(out));
}

std::array<double, 2> ancilla_probabilities(const SparseState& s) {
  require_ancilla(s, "ancilla_probabilities");
  std::array<double, 2> p{0, 0};
  for (const auto& t : s.terms()) p[t.config.ancilla] += std::norm(t.amplitude);
  return p;
}

SparseState collapse_ancilla(const SparseState& s, int bit) {
  require_ancilla(s, "collapse_ancilla");
  std::vector<SparseState::Term> out;
  for (const auto& t : s.terms()) {
    if (t.config.ancilla == bit) out.push_back(t);
  }
  return SparseState::from_terms(s.layout(), std::move(out)).normalized();
}

AncillaMeasurement measure_ancilla(const SparseState& s, Rng& rng) {
  const auto p = ancilla_probabilities(s);
  if (p[0] + p[1] < kNormTolerance) throw std::domain_error("measure_ancilla: zero state");
  const double u = uniform_unit(rng) * (p[0] + p[1]);
  const int bit = u < p[0] ? 0 : 1;
  return {bit, collapse_ancilla(s, bit)};
}

SparseState extract_register(const SparseState& s, int reg) {
  require_register(s, reg, "extract_register");
  if (s.terms().empty()) throw std::domain_error("extract_register: zero state");
  const auto& first = s.terms().front().config;
  std::vector<SparseState::Term> out;
  out.reserve(s.support_size());
  for (const auto& t : s.terms()) {
    for (int r = 0; r < s.layout().perm_registers; ++r) {
      if (r != reg && t.config.regs[static_cast<std::size_t>(r)] !=
                          first.regs[static_cast<std::size_t>(r)]) {
        throw std::domain_error("extract_register: register is entangled with the rest");
      }
    }
    if (s.layout().has_ancilla && t.config.ancilla != first.ancilla) {
      throw std::domain_error("extract_register: register is entangled with the ancilla");
    }
    BasisConfig c;
    c.regs[0] = t.config.regs[static_cast<std::size_t>(reg)];
    out.push_back({c, t.amplitude});
  }
  return SparseState::from_terms(RegisterLayout{false, 1, s.layout().n}, std::move(out));
}

SparseState canonical_phase(const SparseState& s) {
  double best = 0;
  for (const auto& t : s.terms()) best = std::max(best, std::abs(t.amplitude));
  for (const auto& t : s.terms()) {
    if (std::abs(t.amplitude) >= best - kPruneThreshold) {
      return s.scaled(std::abs(t.amplitude) / t.amplitude);
    }
  }
  return s;
}

double distance_up_to_phase(const SparseState& a, const SparseState& b) {
  if (!(a.layout() == b.layout())) throw std::invalid_argument("distance_up_to_phase: layout mismatch");
  const SparseState ca = canonical_phase(a);
  const SparseState cb = canonical_phase(b);
  std::vector<SparseState::Term> diff(ca.terms().begin(), ca.terms().end());
  for (const auto& t : cb.terms()) diff.push_back({t.config, -t.amplitude});
  double worst = 0;
  for (const auto& t : SparseState::from_terms(a.layout(), std::move(diff)).terms()) {
    worst = std::max(worst, std::abs(t.amplitude));
  }
  return worst;
}

std::string dump(const SparseState& s) {
  std::string out;
  char buf[96];
  for (const auto& t : s.terms()) {
    std::snprintf(buf, sizeof buf, "%+.12f %+.12f | ", t.amplitude.real(), t.amplitude.imag());
    out += buf;
    out += s.layout().has_ancilla ? std::to_string(t.config.ancilla) : std::string("-");
    for (int r = 0; r < s.layout().perm_registers; ++r) {
      out += " | ";
      out += to_cycle_string(s.register_value(t.config, r));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qot
