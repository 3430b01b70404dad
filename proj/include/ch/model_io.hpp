#pragma once

#include <filesystem>
#include <iosfwd>

#include "ch/ar.hpp"
#include "ch/ridge.hpp"

namespace ch::harvest {

// Model files are JSON with a format-version and a type tag ("harvest" or
// "ar"); doubles are written in round-trip precision, so a reloaded model
// predicts identically.
void save_harvest_model(const HarvestModel& model, std::ostream& out);
HarvestModel load_harvest_model(std::istream& in);
void save_harvest_model_file(const HarvestModel& model, const std::filesystem::path& path);
HarvestModel load_harvest_model_file(const std::filesystem::path& path);

void save_ar_model(const baseline::ARModel& model, std::ostream& out);
baseline::ARModel load_ar_model(std::istream& in);

}  // namespace ch::harvest
