#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qot/rng.h"

namespace qot {

// Largest degree whose factorial fits a 64-bit rank.
inline constexpr int kMaxDegree = 20;

// Rank of a permutation in the factorial number system, 0 <= value < n!.
struct PermIndex {
  std::uint64_t value = 0;
  int n = 0;

  friend auto operator<=>(const PermIndex&, const PermIndex&) = default;
};

std::uint64_t factorial(int n);

// A bijection on {1..n}. Values are immutable once built.
//
// Composition is right-to-left: (a * b)(i) == a(b(i)).
class Permutation {
 public:
  static Permutation identity(int n);

  // `images[i - 1]` is the image of i. Throws std::invalid_argument unless
  // the images form a bijection on {1..n} with 2 <= n <= kMaxDegree.
  static Permutation from_images(std::vector<int> images);

  // Cycle notation such as "(1 2 3)(4 5)"; points not mentioned are fixed.
  // "()" and "" both denote the identity.
  static Permutation parse(std::string_view cycles, int n);

  int degree() const { return static_cast<int>(images_.size()); }

  // Image of 1-based point i.
  int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }

  std::span<const int> images() const { return images_; }

  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  friend Permutation decode(PermIndex index);
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {}

  std::vector<int> images_;
};

// a∘b, applying b first. Throws std::invalid_argument on degree mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);

inline Permutation operator*(const Permutation& a, const Permutation& b) {
  return compose(a, b);
}

// Cycles rotated to start at their minimum, sorted by that minimum, fixed
// points included as singletons.
std::vector<std::vector<int>> orbits(const Permutation& a);

int transposition_count(const Permutation& a);

// +1 for even permutations, -1 for odd ones.
int sign(const Permutation& a);

// Fixed-point-free involution test: a∘a == id and a(i) != i for every i.
bool is_fixed_point_free_involution(const Permutation& a);

// Cycle notation with fixed points omitted; the identity prints as "()".
std::string to_cycle_string(const Permutation& a);

PermIndex encode(const Permutation& a);

// Allocation-free rank arithmetic on raw image arrays (1-based values).
// images_of_rank expects rank < n!; out must hold n entries.
std::uint64_t rank_of_images(std::span<const int> images);
void images_of_rank(std::uint64_t rank, int n, std::span<int> out);
// Rank of (rank)∘pi, i.e. right multiplication by pi.
std::uint64_t rank_times(std::uint64_t rank, const Permutation& pi);

// Throws std::out_of_range when index.value >= n!.
Permutation decode(PermIndex index);

Permutation sample_symmetric(Rng& rng, int n);

// Uniform over fixed-point-free involutions: the smallest unpaired point is
// matched with a uniformly chosen other unpaired point until none remain.
// Throws std::invalid_argument for odd n.
Permutation sample_involution(Rng& rng, int n);

// Brute force over all n! permutations in rank order (n <= 8). The
// involution filter walks S_n without storing it (n <= 10).
std::vector<Permutation> enumerate_symmetric(int n);
std::vector<Permutation> enumerate_involutions_by_filter(int n);

}  // namespace qot
