#include "ch/spectrum.hpp"

#include <cmath>
#include <complex>

#include "ch/errors.hpp"

namespace ch::eval {

Spectrum power_spectrum(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) throw InvalidArgument("power_spectrum: need at least 2 samples");

  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t t = 0; t < n; ++t) centered[t] = y[t] - mean;

  // Direct DFT; series here are a few thousand samples at most.
  constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
  const std::size_t half = n / 2;
  Spectrum sp;
  sp.frequency.resize(half + 1);
  sp.power.resize(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    std::complex<double> acc(0.0, 0.0);
    const double w = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t) {
      const double ph = w * static_cast<double>(t);
      acc += centered[t] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    const double mag2 = std::norm(acc) / static_cast<double>(n);
    // Interior bins absorb their conjugate mirror so powers sum to the
    // de-meaned energy; k = 0 and k = n/2 (even n) have no mirror.
    const bool mirrored = k != 0 && !(n % 2 == 0 && k == half);
    sp.frequency[k] = static_cast<double>(k) / static_cast<double>(n);
    sp.power[k] = mirrored ? 2.0 * mag2 : mag2;
  }
  return sp;
}

}  // namespace ch::eval
