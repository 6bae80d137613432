#include "radpipe/random.hpp"

#include <cmath>
#include <numbers>

namespace radpipe {

double RandomSource::uniform() {
  const std::uint64_t bits = engine_();
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

double RandomSource::uniform(double a, double b) {
  return a + uniform() * (b - a);
}

int RandomSource::uniform_int(int a, int b) {
  const int span = b - a + 1;
  const int offset = static_cast<int>(uniform() * static_cast<double>(span));
  return a + std::min(span - 1, offset);
}

double RandomSource::normal(double mean, double sigma) {
  const double u1 = uniform();
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + sigma * z;
}

int RandomSource::poisson(double rate) {
  if (rate <= 0.0) {
    return 0;
  }
  const double limit = std::exp(-rate);
  int k = 0;
  double product = 1.0;
  do {
    ++k;
    product *= uniform();
  } while (product > limit);
  return k - 1;
}

}  // namespace radpipe
