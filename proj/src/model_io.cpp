#include "ch/model_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "ch/errors.hpp"

namespace ch::harvest {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json stats_to_json(const ingest::NormStats& st) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t i = 0; i < st.names.size(); ++i)
    j[st.names[i]] = {{"min", st.min[i]}, {"max", st.max[i]}};
  return j;
}

ingest::NormStats stats_from_json(const nlohmann::json& j) {
  ingest::NormStats st;
  for (const auto& [name, mm] : j.items()) {
    st.names.push_back(name);
    st.min.push_back(mm.at("min").get<double>());
    st.max.push_back(mm.at("max").get<double>());
  }
  return st;
}

void check_header(const nlohmann::json& j, const char* type) {
  if (j.at("format_version").get<int>() != kFormatVersion)
    throw DataError("model file: unsupported format version");
  if (j.at("type").get<std::string>() != type)
    throw DataError("model file: expected type '" + std::string(type) + "', got '" +
                    j.at("type").get<std::string>() + "'");
}

nlohmann::json read_json(std::istream& in) {
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: bad JSON: ") + e.what());
  }
}

}  // namespace

void save_harvest_model(const HarvestModel& model, std::ostream& out) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "harvest";
  j["target"] = model.target_name;
  j["tau"] = model.tau;
  j["interval_s"] = model.interval_s;
  j["p"] = model.p;
  j["beta"] = model.beta;
  j["has_intercept"] = model.has_intercept;
  j["intercept"] = model.intercept;
  j["weights"] = model.weights;
  auto labels = nlohmann::json::array();
  for (const auto& l : model.feature_labels) labels.push_back({l.series, l.lag});
  j["feature_labels"] = std::move(labels);
  j["norm_stats"] = stats_to_json(model.norm_stats);
  out << j.dump(2) << '\n';
}

HarvestModel load_harvest_model(std::istream& in) {
  const nlohmann::json j = read_json(in);
  try {
    check_header(j, "harvest");
    HarvestModel m;
    m.target_name = j.at("target").get<std::string>();
    m.tau = j.at("tau").get<int>();
    m.interval_s = j.at("interval_s").get<double>();
    m.p = j.at("p").get<int>();
    m.beta = j.at("beta").get<double>();
    m.has_intercept = j.at("has_intercept").get<bool>();
    m.intercept = j.at("intercept").get<double>();
    m.weights = j.at("weights").get<std::vector<double>>();
    for (const auto& l : j.at("feature_labels"))
      m.feature_labels.push_back({l.at(0).get<std::string>(), l.at(1).get<int>()});
    m.norm_stats = stats_from_json(j.at("norm_stats"));
    if (m.weights.size() != m.feature_labels.size())
      throw DataError("model file: weights and feature_labels disagree in length");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: missing or mistyped field: ") + e.what());
  }
}

void save_harvest_model_file(const HarvestModel& model, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write model file " + path.string());
  save_harvest_model(model, f);
}

HarvestModel load_harvest_model_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open model file " + path.string());
  return load_harvest_model(f);
}

void save_ar_model(const baseline::ARModel& model, std::ostream& out) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["type"] = "ar";
  j["p"] = model.p;
  j["tau"] = model.tau;
  j["coefficients"] = model.coefficients;
  j["intercept"] = model.intercept;
  out << j.dump(2) << '\n';
}

baseline::ARModel load_ar_model(std::istream& in) {
  const nlohmann::json j = read_json(in);
  try {
    check_header(j, "ar");
    baseline::ARModel m;
    m.p = j.at("p").get<int>();
    m.tau = j.at("tau").get<int>();
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    m.intercept = j.at("intercept").get<double>();
    if (m.coefficients.size() != static_cast<std::size_t>(m.p))
      throw DataError("model file: coefficient count does not match p");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file: missing or mistyped field: ") + e.what());
  }
}

}  // namespace ch::harvest
