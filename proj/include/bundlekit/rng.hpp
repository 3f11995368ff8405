#pragma once

#include <cstdint>
#include <random>

namespace bundlekit {

// All randomized code in the library draws through this wrapper so that a
// seed fixes the byte-exact output on every platform. Raw engine bits are
// mapped to doubles explicitly; std::uniform_real_distribution and friends
// are avoided because their output is implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as input to log().
  double next_unit_open_low() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) by rejection, unbiased.
  std::uint64_t next_index(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Derives an independent stream, e.g. one per component or per stage.
  SeededRng split(std::uint64_t salt) {
    return SeededRng(mix(engine_() ^ salt));
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bundlekit
