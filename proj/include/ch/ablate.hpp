#pragma once

#include <span>
#include <string>
#include <vector>

#include "ch/matrix.hpp"
#include "ch/ridge.hpp"

namespace ch::harvest {

enum class AblationMode { fixed, relearn };

struct AblationSpec {
  std::vector<std::string> removed_series;
  AblationMode mode = AblationMode::fixed;
};

// Indices of the feature columns that survive removing every lag of the
// listed series. Throws if a series is unknown or nothing survives.
std::vector<std::size_t> surviving_columns(
    const std::vector<ingest::FeatureLabel>& labels,
    const std::vector<std::string>& removed_series);

// Sensor-loss mode 1: keep the trained weights, delete the removed entries.
HarvestModel ablate_fixed(const HarvestModel& model,
                          const std::vector<std::string>& removed_series);

// Sensor-loss mode 2: refit the readout on the reduced feature matrix,
// reusing the original model's beta and metadata.
HarvestModel ablate_relearn(const HarvestModel& model, const DenseMatrix& x_train,
                            std::span<const double> y_train,
                            const std::vector<std::string>& removed_series);

}  // namespace ch::harvest
