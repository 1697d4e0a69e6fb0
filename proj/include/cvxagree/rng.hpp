#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cvxagree {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based stream key: a pure function of its four coordinates, so the
/// stream an actor draws from never depends on iteration order elsewhere.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t round, std::uint64_t actor, std::uint64_t purpose) noexcept;

/// mt19937_64 with portable bounded draws (the standard distributions are
/// implementation-defined, which would break byte-identical replays).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  /// k distinct elements of [0, n) in increasing order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cvxagree
