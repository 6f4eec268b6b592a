#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace mulan {

/// Seeded 64-bit generator with platform-independent derived draws. The
/// standard distributions are implementation-defined, so bounded integers and
/// unit reals are produced here directly from the mt19937_64 stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Deterministically derives an independent child seed for `stream`.
  [[nodiscard]] static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mulan
