#ifndef PODLES_RNG_HPP
#define PODLES_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace podles {

// Seeded generator with a fixed derivation so residual tables reproduce
// bit-for-bit across platforms: raw mt19937_64 output mapped to doubles as
// (x >> 11) * 2^-53, never through std::uniform_*_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double unit_real() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double real(double lo, double hi) { return lo + (hi - lo) * unit_real(); }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {  // inclusive bounds
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  std::complex<double> complex_in_square(double half_side) {
    const double re = real(-half_side, half_side);
    const double im = real(-half_side, half_side);
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace podles

#endif  // PODLES_RNG_HPP
