#include "cvxagree/rng.hpp"

#include <algorithm>
#include <numeric>

namespace cvxagree {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t round, std::uint64_t actor, std::uint64_t purpose) noexcept {
  std::uint64_t h = splitmix64(root);
  h = splitmix64(h ^ round);
  h = splitmix64(h ^ (actor * 0x100000001b3ULL));
  return splitmix64(h ^ (purpose << 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

std::vector<std::size_t> Rng::sample(std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < k && i < n; ++i) std::swap(all[i], all[i + below(n - i)]);
  all.resize(std::min(k, n));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace cvxagree
