#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ch::cmd {

inline constexpr const char* kToolName = "ch";
inline constexpr const char* kToolVersion = "0.1.0";

// Flat configuration record shared by every subcommand; JSON config files
// mirror these keys and CLI flags override file values.
struct RunConfig {
  // Paths
  std::string events;
  std::string network;
  std::string model;
  std::string prediction;  // embed/report input
  std::string input_a;     // wd inputs
  std::string input_b;
  std::string out_dir = "run";

  // Simulation
  std::size_t rows = 3;
  std::size_t cols = 3;
  long steps = 2000;
  double seconds_per_step = 1.0;
  double rate_min = 0.15;
  double rate_max = 0.45;
  std::vector<double> periods;  // discrete signal cycle lengths; overrides the range
  double init_lo = 5.0;
  double init_hi = 15.0;
  bool torus = true;

  // Prediction task
  std::string target = "5e";
  int tau = 7;
  double interval_s = 18.0;
  int p = 6;
  double beta = 1e-3;
  double r = 0.8;
  std::vector<std::string> exclude = {"5n", "5s", "5w"};
  bool intercept = true;

  // Online schedule
  double r1 = 0.5;
  double r2 = 0.8;
  std::vector<double> r1_grid = {0.3, 0.5, 0.7};
  std::vector<double> r2_grid = {0.3, 0.5, 0.7, 0.9};

  // Sweep grids
  std::vector<int> tau_grid = {3, 7, 14};
  std::vector<double> interval_grid = {6.0, 18.0, 36.0};

  // Ablation
  std::vector<std::string> removed;

  // Instruments
  std::string series;  // spectrum target; defaults to `target`
  std::size_t max_points = 512;
  std::size_t top_k = 10;
  int dim = 3;
  int lag = 1;

  std::uint64_t seed = 42;
};

// Merge a flat JSON config file into `config` (unknown keys rejected).
void load_config_file(RunConfig& config, const std::filesystem::path& path);
// CH_SEED environment variable overrides the config seed when set.
void apply_env_seed(RunConfig& config);

// Each command writes its artifacts under config.out_dir and throws
// ch::InvalidArgument / ch::DataError / ch::NumericError on failure.
void run_simulate(const RunConfig& config);
void run_fit(const RunConfig& config);
void run_predict(const RunConfig& config);
void run_online(const RunConfig& config);
void run_ablate(const RunConfig& config);
void run_sweep(const RunConfig& config);
void run_spectrum(const RunConfig& config);
void run_embed(const RunConfig& config);
void run_wd(const RunConfig& config);
void run_report(const RunConfig& config);

// Artifact CSV helpers shared with the test suites.
struct PredictionSeries {
  std::vector<std::size_t> t;
  std::vector<double> actual;
  std::vector<double> predicted;
};
void write_prediction_csv(const PredictionSeries& p, const std::filesystem::path& path);
PredictionSeries read_prediction_csv(const std::filesystem::path& path);

}  // namespace ch::cmd
