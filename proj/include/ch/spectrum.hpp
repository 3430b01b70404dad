#pragma once

#include <span>
#include <vector>

namespace ch::eval {

// One-sided power spectrum of the de-meaned series, no window: bin k covers
// frequency k/N cycles per step, k = 0..floor(N/2). Powers are scaled so
// their sum equals the de-meaned energy (Parseval).
struct Spectrum {
  std::vector<double> frequency;
  std::vector<double> power;
};

Spectrum power_spectrum(std::span<const double> y);

}  // namespace ch::eval
