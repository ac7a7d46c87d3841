#ifndef OCOMD_RNG_HPP
#define OCOMD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "ocomd/vec.hpp"

namespace ocomd {

// splitmix64; used to derive independent per-repetition streams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x51ed2701ULL));
}

// mt19937_64 with hand-rolled samplers. std::normal_distribution is not
// pinned by the standard, so ledgers would not reproduce across stdlibs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0, 1)
  double uniform() {
    return (gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller, one sample per call (cached pair member would break stream
  // splitting symmetry; simplicity wins at this scale).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  Vec normal_vec(std::size_t n, double stddev = 1.0) {
    Vec v(n);
    for (auto& x : v) x = stddev * normal();
    return v;
  }

  Vec uniform_vec(std::size_t n, double lo, double hi) {
    Vec v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  // uniform direction scaled to a uniform-in-ball radius
  Vec ball_vec(std::size_t n, double radius) {
    Vec v = normal_vec(n);
    double nv = norm2(v);
    if (nv == 0.0) return zeros(n);
    double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(n));
    return scale(v, r / nv);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ocomd

#endif
