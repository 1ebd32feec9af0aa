#pragma once

#include <cstdint>
#include <random>

namespace qtwin {

// Every stochastic result in the project is reproducible from a 64-bit seed
// and this generator. mt19937_64 is fully specified by the standard, so the
// raw stream is identical on every platform; the double and bounded-integer
// derivations below are hand-rolled because std:: distributions are not
// portable.
inline constexpr const char* kRngAlgorithm = "mt19937_64";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform in [0, n). Unbiased via bottom rejection.
  std::uint64_t below(std::uint64_t n) {
    if ((n & (n - 1)) == 0) return engine_() & (n - 1);
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = engine_();
    while (x < threshold) x = engine_();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

// Per-repeat / per-trajectory seeds derived from a master seed. The rule is
// the splitmix64 output function on master + (index+1)*gamma, so derived
// seeds are computable independently for any index (order-independent).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace qtwin
