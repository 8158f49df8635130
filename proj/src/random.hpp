#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace batlb::detail {

/// Seeded generator with draws defined here rather than by the standard
/// library's distributions, so outputs match across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Reject the 2^64 mod bound lowest draws so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < threshold);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace batlb::detail
