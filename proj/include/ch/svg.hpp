#pragma once

#include <span>
#include <string>

#include "ch/embedding.hpp"
#include "ch/spectrum.hpp"
#include "ch/sweep.hpp"

namespace ch::svg {

// Self-contained SVG documents. These render values straight from the
// artifact CSV structures; nothing is recomputed.

// Grayscale grid, interval on x, tau on y. Cell fill is monotone in NRMSE
// (higher error = darker); each cell carries data-tau / data-interval /
// data-nrmse attributes. Failed cells are hatched red.
std::string sweep_heatmap(const eval::SweepResult& result);

// Actual vs predicted polylines over target time.
std::string prediction_lines(std::size_t t0, std::span<const double> actual,
                             std::span<const double> predicted);

// First two delay coordinates of each cloud as a scatter.
std::string attractor_scatter(const eval::AttractorCloud& actual,
                              const eval::AttractorCloud& predicted);

// Power on a log10 axis against frequency.
std::string spectrum_chart(const eval::Spectrum& spectrum, const std::string& name);

}  // namespace ch::svg
