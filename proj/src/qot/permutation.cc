#include "qot/permutation.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace qot {

namespace {

void check_degree(int n) {
  if (n < 2 || n > kMaxDegree) {
    throw std::invalid_argument("permutation degree must be in [2, " +
                                std::to_string(kMaxDegree) + "], got " +
                                std::to_string(n));
  }
}

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxDegree) throw std::out_of_range("factorial: n out of range");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Permutation Permutation::identity(int n) {
  check_degree(n);
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  check_degree(n);
  std::vector<bool> seen(images.size(), false);
  for (int v : images) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
      throw std::invalid_argument("images do not form a bijection on {1.." +
                                  std::to_string(n) + "}");
    }
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(std::string_view text, int n) {
  check_degree(n);
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad cycle notation \"" + std::string(text) +
                                "\": " + why);
  };

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    for (;;) {
      skip_space();
      if (pos >= text.size()) fail("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected a point");
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > n) fail("point exceeds degree " + std::to_string(n));
        ++pos;
      }
      if (v < 1) fail("points start at 1");
      if (used[static_cast<std::size_t>(v - 1)]) {
        fail("point " + std::to_string(v) + " appears more than once");
      }
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(v);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("compose: degree mismatch (" + std::to_string(a.degree()) +
                                " vs " + std::to_string(b.degree()) + ")");
  }
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (int i = 1; i <= a.degree(); ++i) images[static_cast<std::size_t>(i - 1)] = a(b(i));
  return Permutation::from_images(std::move(images));
}

Permutation inverse(const Permutation& a) {
  std::vector<int> images(static_cast<std::size_t>(a.degree()));
  for (int i = 1; i <= a.degree(); ++i) images[static_cast<std::size_t>(a(i) - 1)] = i;
  return Permutation::from_images(std::move(images));
}

std::vector<std::vector<int>> orbits(const Permutation& a) {
  std::vector<std::vector<int>> result;
  std::vector<bool> visited(static_cast<std::size_t>(a.degree()), false);
  // Scanning from 1 upward means each cycle is first met at its minimum.
  for (int start = 1; start <= a.degree(); ++start) {
    if (visited[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    for (int i = start; !visited[static_cast<std::size_t>(i - 1)]; i = a(i)) {
      visited[static_cast<std::size_t>(i - 1)] = true;
      cycle.push_back(i);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

int transposition_count(const Permutation& a) {
  int count = 0;
  for (const auto& cycle : orbits(a)) count += static_cast<int>(cycle.size()) - 1;
  return count;
}

int sign(const Permutation& a) { return transposition_count(a) % 2 == 0 ? 1 : -1; }

bool is_fixed_point_free_involution(const Permutation& a) {
  for (int i = 1; i <= a.degree(); ++i) {
    if (a(i) == i || a(a(i)) != i) return false;
  }
  return true;
}

std::string to_cycle_string(const Permutation& a) {
  std::string out;
  for (const auto& cycle : orbits(a)) {
    if (cycle.size() < 2) continue;
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(cycle[k]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::uint64_t rank_of_images(std::span<const int> images) {
  const auto n = images.size();
  std::uint64_t rank = 0;
  // Lehmer digit at position i counts later images smaller than images[i].
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += images[j] < images[i];
    rank = rank * static_cast<std::uint64_t>(n - i) + smaller;
  }
  return rank;
}

void images_of_rank(std::uint64_t rank, int n, std::span<int> out) {
  std::array<int, kMaxDegree> digits{};
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(n - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::array<int, kMaxDegree> pool{};
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
  int remaining = n;
  for (int i = 0; i < n; ++i) {
    const int d = digits[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(d)];
    std::copy(pool.begin() + d + 1, pool.begin() + remaining, pool.begin() + d);
    --remaining;
  }
}

std::uint64_t rank_times(std::uint64_t rank, const Permutation& pi) {
  const int n = pi.degree();
  std::array<int, kMaxDegree> a{}, product{};
  images_of_rank(rank, n, a);
  for (int i = 0; i < n; ++i) {
    product[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(pi(i + 1) - 1)];
  }
  return rank_of_images(std::span<const int>(product.data(), static_cast<std::size_t>(n)));
}

PermIndex encode(const Permutation& a) {
  return PermIndex{rank_of_images(a.images()), a.degree()};
}

Permutation decode(PermIndex index) {
  check_degree(index.n);
  if (index.value >= factorial(index.n)) {
    throw std::out_of_range("permutation index " + std::to_string(index.value) +
                            " >= " + std::to_string(index.n) + "!");
  }
  std::vector<int> images(static_cast<std::size_t>(index.n));
  images_of_rank(index.value, index.n, images);
  return Permutation(std::move(images));
}

Permutation sample_symmetric(Rng& rng, int n) {
  check_degree(n);
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = uniform_below(rng, static_cast<std::uint64_t>(i + 1));
    std::swap(images[static_cast<std::size_t>(i)], images[j]);
  }
  return Permutation::from_images(std::move(images));
}

Permutation sample_involution(Rng& rng, int n) {
  check_degree(n);
  if (n % 2 != 0) {
    throw std::invalid_argument("fixed-point-free involutions need even degree, got " +
                                std::to_string(n));
  }
  std::vector<int> unpaired(static_cast<std::size_t>(n));
  std::iota(unpaired.begin(), unpaired.end(), 1);
  std::vector<int> images(static_cast<std::size_t>(n));
  while (!unpaired.empty()) {
    const int first = unpaired.front();
    unpaired.erase(unpaired.begin());
    const auto k = uniform_below(rng, unpaired.size());
    const int partner = unpaired[k];
    unpaired.erase(unpaired.begin() + static_cast<std::ptrdiff_t>(k));
    images[static_cast<std::size_t>(first - 1)] = partner;
    images[static_cast<std::size_t>(partner - 1)] = first;
  }
  return Permutation::from_images(std::move(images));
}

std::vector<Permutation> enumerate_symmetric(int n) {
  check_degree(n);
  if (n > 8) throw std::invalid_argument("full enumeration limited to n <= 8");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> all;
  all.reserve(factorial(n));
  // Lexicographic order of image arrays coincides with Lehmer rank order.
  do {
    all.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return all;
}

std::vector<Permutation> enumerate_involutions_by_filter(int n) {
  check_degree(n);
  if (n > 10) throw std::invalid_argument("enumeration limited to n <= 10");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      const int j = images[static_cast<std::size_t>(i - 1)];
      ok = j != i && images[static_cast<std::size_t>(j - 1)] == i;
    }
    if (ok) out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace qot
