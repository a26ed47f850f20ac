#ifndef EB_RNG_HPP
#define EB_RNG_HPP

#include <cstdint>
#include <cmath>
#include <random>

#include "special_functions.hpp"

namespace eb {

// splitmix64 output function; used to decorrelate nearby seed values and to
// derive stage-level streams from a single run seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic stream derivation: one run seed plus a stream tag gives an
// independent substream seed. Stage tags live where the streams are created.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag));
}

// Explicitly seeded generator. Draws are pure functions of the seed and the
// call sequence, so results are reproducible regardless of scheduling as long
// as every logical task owns its own stream (per-unit rule: base_seed ^ unit_id).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  // Uniform on the open interval (0,1), 53-bit resolution; never returns an
  // endpoint, so log() and std_normal_quantile() are always safe.
  double uniform() {
    std::uint64_t bits = gen_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // Standard normal by inversion of the uniform.
  double normal() { return std_normal_quantile(uniform()); }

  double exponential(double rate) { return -std::log(uniform()) / rate; }

  // Gamma(k/2, rate 1) for integer k >= 1: sum of unit exponentials plus,
  // for odd k, half a squared normal. Exact, rejection-free.
  double gamma_half_integer(unsigned twice_shape) {
    double g = 0.0;
    for (unsigned i = 0; i + 1 < twice_shape; i += 2) g += exponential(1.0);
    if (twice_shape % 2 == 1) {
      double z = normal();
      g += 0.5 * z * z;
    }
    return g;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace eb

#endif
