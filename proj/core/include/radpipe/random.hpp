#pragma once

#include <cstdint>
#include <random>

namespace radpipe {

// Seeded random source with fixed derivation algorithms on top of the
// standard 64-bit Mersenne Twister, so identical seeds give identical
// streams on every platform (std::*_distribution makes no such promise).
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1], 53-bit resolution.
  double uniform();

  // Uniform on (a, b].
  double uniform(double a, double b);

  // Uniform integer on [a, b], inclusive.
  int uniform_int(int a, int b);

  // Box-Muller transform; consumes exactly two uniforms per call.
  double normal(double mean, double sigma);

  // Knuth's product-of-uniforms method; adequate for the rates used here.
  int poisson(double rate);

 private:
  std::mt19937_64 engine_;
};

}  // namespace radpipe
