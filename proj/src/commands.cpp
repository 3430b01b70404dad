#include "ch/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ch/ablate.hpp"
#include "ch/ar.hpp"
#include "ch/embedding.hpp"
#include "ch/errors.hpp"
#include "ch/lattice.hpp"
#include "ch/metrics.hpp"
#include "ch/model_io.hpp"
#include "ch/online.hpp"
#include "ch/pipeline.hpp"
#include "ch/spectrum.hpp"
#include "ch/svg.hpp"
#include "ch/sweep.hpp"
#include "ch/textio.hpp"
#include "ch/wasserstein.hpp"

namespace ch::cmd {

namespace fs = std::filesystem;
using textio::format_double;

namespace {

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw DataError("cannot create output directory " + config.out_dir);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path.string());
  return f;
}

void require_path(const std::string& value, const char* flag) {
  if (value.empty())
    throw InvalidArgument(std::string("missing required input: ") + flag);
}

// tau > p and a usable split, checked before any file is touched.
void validate_task_params(const RunConfig& config) {
  if (config.tau <= config.p)
    throw InvalidArgument("causality requires tau > p (tau = " + std::to_string(config.tau) +
                          ", p = " + std::to_string(config.p) + ")");
  if (config.p < 0) throw InvalidArgument("p must be >= 0");
  if (!(config.r > 0.0 && config.r < 1.0)) throw InvalidArgument("r must be in (0, 1)");
  if (config.interval_s <= 0.0) throw InvalidArgument("interval_s must be > 0");
  if (config.beta < 0.0) throw InvalidArgument("beta must be >= 0");
}

pipeline::TaskSpec task_spec(const RunConfig& config) {
  pipeline::TaskSpec spec;
  spec.target = config.target;
  spec.tau = config.tau;
  spec.interval_s = config.interval_s;
  spec.p = config.p;
  spec.beta = config.beta;
  spec.r = config.r;
  spec.exclude = config.exclude;
  spec.intercept = config.intercept;
  return spec;
}

void write_attractor_csv(const eval::AttractorCloud& cloud, const fs::path& path) {
  static const char* kAxes[3] = {"x", "y", "z"};
  if (cloud.dim > 3) throw InvalidArgument("attractor csv: dim > 3 unsupported");
  auto f = open_out(path);
  for (std::size_t d = 0; d < cloud.dim; ++d) f << (d ? "," : "") << kAxes[d];
  f << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto pt = cloud.point(i);
    for (std::size_t d = 0; d < cloud.dim; ++d)
      f << (d ? "," : "") << format_double(pt[d]);
    f << '\n';
  }
}

eval::AttractorCloud read_attractor_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open attractor file " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw DataError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = textio::split_csv_line(line);
  if (header.empty() || header[0] != "x")
    throw DataError(path.string() + ": expected x[,y[,z]] header");

  eval::AttractorCloud cloud;
  cloud.dim = header.size();
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = textio::split_csv_line(line);
    if (fields.size() != cloud.dim)
      throw DataError(path.string() + " line " + std::to_string(lineno) +
                      ": field count mismatch");
    for (const auto& field : fields)
      cloud.coords.push_back(textio::parse_double(
          field, path.string() + " line " + std::to_string(lineno)));
  }
  if (cloud.size() == 0) throw DataError(path.string() + ": no points");
  return cloud;
}

void write_report_kv(const fs::path& path,
                     const std::vector<std::pair<std::string, std::string>>& rows) {
  auto f = open_out(path);
  f << "key,value\n";
  for (const auto& [k, v] : rows) f << k << ',' << v << '\n';
}

}  // namespace

void load_config_file(RunConfig& config, const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config file " + path.string() + ": bad JSON: " + e.what());
  }
  if (!j.is_object()) throw DataError("config file: expected a JSON object");

  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "events") config.events = value.get<std::string>();
      else if (key == "network") config.network = value.get<std::string>();
      else if (key == "model") config.model = value.get<std::string>();
      else if (key == "prediction") config.prediction = value.get<std::string>();
      else if (key == "input_a") config.input_a = value.get<std::string>();
      else if (key == "input_b") config.input_b = value.get<std::string>();
      else if (key == "out_dir") config.out_dir = value.get<std::string>();
      else if (key == "rows") config.rows = value.get<std::size_t>();
      else if (key == "cols") config.cols = value.get<std::size_t>();
      else if (key == "steps") config.steps = value.get<long>();
      else if (key == "seconds_per_step") config.seconds_per_step = value.get<double>();
      else if (key == "rate_min") config.rate_min = value.get<double>();
      else if (key == "rate_max") config.rate_max = value.get<double>();
      else if (key == "periods") config.periods = value.get<std::vector<double>>();
      else if (key == "init_lo") config.init_lo = value.get<double>();
      else if (key == "init_hi") config.init_hi = value.get<double>();
      else if (key == "torus") config.torus = value.get<bool>();
      else if (key == "target") config.target = value.get<std::string>();
      else if (key == "tau") config.tau = value.get<int>();
      else if (key == "interval_s") config.interval_s = value.get<double>();
      else if (key == "p") config.p = value.get<int>();
      else if (key == "beta") config.beta = value.get<double>();
      else if (key == "r") config.r = value.get<double>();
      else if (key == "exclude") config.exclude = value.get<std::vector<std::string>>();
      else if (key == "intercept") config.intercept = value.get<bool>();
      else if (key == "r1") config.r1 = value.get<double>();
      else if (key == "r2") config.r2 = value.get<double>();
      else if (key == "r1_grid") config.r1_grid = value.get<std::vector<double>>();
      else if (key == "r2_grid") config.r2_grid = value.get<std::vector<double>>();
      else if (key == "tau_grid") config.tau_grid = value.get<std::vector<int>>();
      else if (key == "interval_grid") config.interval_grid = value.get<std::vector<double>>();
      else if (key == "removed") config.removed = value.get<std::vector<std::string>>();
      else if (key == "series") config.series = value.get<std::string>();
      else if (key == "max_points") config.max_points = value.get<std::size_t>();
      else if (key == "top_k") config.top_k = value.get<std::size_t>();
      else if (key == "dim") config.dim = value.get<int>();
      else if (key == "lag") config.lag = value.get<int>();
      else if (key == "seed") config.seed = value.get<std::uint64_t>();
      else throw DataError("config file: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("config file: mistyped value: ") + e.what());
  }
}

void apply_env_seed(RunConfig& config) {
  const char* env = std::getenv("CH_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0')
    throw InvalidArgument(std::string("CH_SEED is not an integer: ") + env);
  config.seed = static_cast<std::uint64_t>(v);
}

void run_simulate(const RunConfig& config) {
  if (config.steps < 1) throw InvalidArgument("steps must be >= 1");
  if (config.rows < 2 || config.cols < 2)
    throw InvalidArgument("rows and cols must be >= 2");
  if (config.seconds_per_step <= 0.0)
    throw InvalidArgument("seconds_per_step must be > 0");
  if (!(config.init_lo >= 0.0 && config.init_hi >= config.init_lo))
    throw InvalidArgument("need 0 <= init_lo <= init_hi");
  ensure_out_dir(config);

  traffic::SignalConfig sig;
  sig.rate_min = config.rate_min;
  sig.rate_max = config.rate_max;
  sig.periods = config.periods;
  const traffic::LatticeNetwork net =
      traffic::build_lattice(config.rows, config.cols, sig, config.seed, config.torus);
  const traffic::TrafficState init =
      traffic::random_state(net, config.init_lo, config.init_hi, config.seed + 1);
  const traffic::SimResult sim =
      traffic::simulate(net, init, config.steps, config.seconds_per_step);

  const fs::path dir(config.out_dir);
  {
    auto f = open_out(dir / "network.json");
    traffic::save_network_json(net, f);
  }
  {
    auto f = open_out(dir / "events.csv");
    traffic::write_event_csv(sim.log, f);
  }
  {
    auto f = open_out(dir / "trajectory.csv");
    f << 't';
    for (std::size_t i = 0; i < net.link_count(); ++i)
      f << ',' << net.link_series_name(i);
    f << '\n';
    for (const auto& state : sim.trajectory) {
      f << state.step;
      for (double c : state.counts) f << ',' << format_double(c);
      f << '\n';
    }
  }
  {
    nlohmann::json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["format_version"] = 1;
    meta["seed"] = config.seed;
    meta["init_seed"] = config.seed + 1;
    meta["rows"] = config.rows;
    meta["cols"] = config.cols;
    meta["steps"] = config.steps;
    meta["seconds_per_step"] = config.seconds_per_step;
    meta["rate_min"] = config.rate_min;
    meta["rate_max"] = config.rate_max;
    meta["periods"] = config.periods;
    meta["init_lo"] = config.init_lo;
    meta["init_hi"] = config.init_hi;
    meta["torus"] = config.torus;
    auto f = open_out(dir / "meta.json");
    f << meta.dump(2) << '\n';
  }
  std::cout << "simulate: " << config.rows << "x" << config.cols << " lattice, "
            << config.steps << " steps, " << sim.log.records.size()
            << " crossing events -> " << config.out_dir << "\n";
}

void run_fit(const RunConfig& config) {
  validate_task_params(config);
  require_path(config.events, "--events");
  ensure_out_dir(config);

  const ingest::EventLog log = ingest::parse_events_file(config.events);
  const pipeline::FittedRun run = pipeline::fit_events(log, task_spec(config));

  const fs::path dir(config.out_dir);
  harvest::save_harvest_model_file(run.model, dir / "model.json");

  PredictionSeries pred;
  const std::size_t t0 = run.task.first_test_time();
  for (std::size_t i = 0; i < run.pred_test.size(); ++i) {
    pred.t.push_back(t0 + i);
    pred.actual.push_back(run.task.y_test[i]);
    pred.predicted.push_back(run.pred_test[i]);
  }
  write_prediction_csv(pred, dir / "prediction.csv");

  {
    auto f = open_out(dir / "features_ranked.csv");
    f << "rank,series,lag,weight\n";
    const auto ranked = eval::rank_features(run.model, config.top_k);
    for (std::size_t i = 0; i < ranked.size(); ++i)
      f << i + 1 << ',' << ranked[i].series << ',' << ranked[i].lag << ','
        << format_double(ranked[i].weight) << '\n';
  }

  write_report_kv(dir / "fit_report.csv",
                  {{"target", run.model.target_name},
                   {"tau", std::to_string(config.tau)},
                   {"interval_s", format_double(config.interval_s)},
                   {"p", std::to_string(config.p)},
                   {"beta", format_double(config.beta)},
                   {"r", format_double(config.r)},
                   {"intercept", config.intercept ? "true" : "false"},
                   {"n_train", std::to_string(run.task.y_train.size())},
                   {"n_test", std::to_string(run.task.y_test.size())},
                   {"nrmse_train", format_double(run.nrmse_train)},
                   {"nrmse_test", format_double(run.nrmse_test)}});

  std::cout << "fit: target " << run.model.target_name << ", nrmse_train "
            << format_double(run.nrmse_train) << ", nrmse_test "
            << format_double(run.nrmse_test) << " -> " << config.out_dir << "\n";
}

void run_predict(const RunConfig& config) {
  require_path(config.model, "--model");
  require_path(config.events, "--events");
  ensure_out_dir(config);

  const harvest::HarvestModel model = harvest::load_harvest_model_file(config.model);
  const ingest::EventLog log = ingest::parse_events_file(config.events);
  const pipeline::AppliedModel applied = pipeline::apply_model(model, log);

  PredictionSeries pred;
  for (std::size_t i = 0; i < applied.predicted.size(); ++i) {
    pred.t.push_back(applied.first_target_time + i);
    pred.actual.push_back(applied.actual[i]);
    pred.predicted.push_back(applied.predicted[i]);
  }
  write_prediction_csv(pred, fs::path(config.out_dir) / "prediction.csv");

  const double score = eval::nrmse(applied.actual, applied.predicted);
  std::cout << "predict: " << applied.predicted.size() << " rows, nrmse "
            << format_double(score) << " -> " << config.out_dir << "/prediction.csv\n";
}

void run_online(const RunConfig& config) {
  validate_task_params(config);
  require_path(config.events, "--events");
  if (!(config.r1 > 0.0 && config.r1 <= config.r2 && config.r2 <= 1.0))
    throw InvalidArgument("need 0 < r1 <= r2 <= 1");
  ensure_out_dir(config);

  const ingest::EventLog log = ingest::parse_events_file(config.events);
  const ingest::Task task = pipeline::build_task(log, task_spec(config));

  // Whole task, re-joined: the online schedule draws its own split.
  const std::size_t rows = task.x_train.rows + task.x_test.rows;
  DenseMatrix x(rows, task.x_train.cols);
  std::copy(task.x_train.data.begin(), task.x_train.data.end(), x.data.begin());
  std::copy(task.x_test.data.begin(), task.x_test.data.end(),
            x.data.begin() + static_cast<long>(task.x_train.data.size()));
  std::vector<double> y = task.y_train;
  y.insert(y.end(), task.y_test.begin(), task.y_test.end());

  const fs::path dir(config.out_dir);
  const auto tau = static_cast<std::size_t>(config.tau);

  const harvest::OnlineResult main_run =
      harvest::online_fit_predict(x, y, config.r1, config.r2, config.beta, config.intercept);
  const std::size_t n0 = main_run.schedule.rounds.front().predict_begin;

  PredictionSeries pred;
  for (std::size_t i = 0; i < main_run.prediction.size(); ++i) {
    pred.t.push_back(tau + n0 + i);
    pred.actual.push_back(y[n0 + i]);
    pred.predicted.push_back(main_run.prediction[i]);
  }
  write_prediction_csv(pred, dir / "online_prediction.csv");

  {
    auto f = open_out(dir / "schedule.csv");
    f << "round,train_rows,predict_from_t,predict_to_t\n";
    for (std::size_t i = 0; i < main_run.schedule.rounds.size(); ++i) {
      const auto& round = main_run.schedule.rounds[i];
      f << i + 1 << ',' << round.train_rows << ',' << tau + round.predict_begin << ','
        << tau + round.predict_end << '\n';
    }
  }

  // (r1, r2) grid, Fig-style: diagonal cells are the one-shot fits.
  std::size_t valid = 0;
  {
    auto f = open_out(dir / "online_grid.csv");
    f << "r1,r2,delta,nrmse,status\n";
    for (double r1 : config.r1_grid)
      for (double r2 : config.r2_grid) {
        f << format_double(r1) << ',' << format_double(r2) << ',';
        if (r2 < r1) {
          f << ",skipped: r2 < r1\n";
          continue;
        }
        try {
          const auto res =
              harvest::online_fit_predict(x, y, r1, r2, config.beta, config.intercept);
          const std::size_t begin = res.schedule.rounds.front().predict_begin;
          const double score = eval::nrmse(
              std::span<const double>(y).subspan(begin), res.prediction);
          f << res.schedule.delta << ',' << format_double(score) << ",ok\n";
          ++valid;
        } catch (const Error& e) {
          std::string reason = e.what();
          std::replace(reason.begin(), reason.end(), ',', ';');
          f << ",failed: " << reason << '\n';
        }
      }
  }
  if (valid == 0 && !config.r1_grid.empty())
    throw DataError("online: every (r1, r2) grid cell is invalid");

  const double score =
      eval::nrmse(std::span<const double>(y).subspan(n0), main_run.prediction);
  std::cout << "online: r1 " << format_double(config.r1) << ", r2 "
            << format_double(config.r2) << ", delta " << main_run.schedule.delta
            << ", rounds " << main_run.schedule.rounds.size() << ", nrmse "
            << format_double(score) << " -> " << config.out_dir << "\n";
}

void run_ablate(const RunConfig& config) {
  validate_task_params(config);
  require_path(config.events, "--events");
  ensure_out_dir(config);

  const ingest::EventLog log = ingest::parse_events_file(config.events);
  const pipeline::FittedRun run = pipeline::fit_events(log, task_spec(config));
  const ingest::Task& task = run.task;

  const harvest::HarvestModel fixed =
      harvest::ablate_fixed(run.model, config.removed);
  const harvest::HarvestModel relearned = harvest::ablate_relearn(
      run.model, task.x_train, task.y_train, config.removed);

  const auto keep = harvest::surviving_columns(run.model.feature_labels, config.removed);
  const DenseMatrix x_train = select_columns(task.x_train, keep);
  const DenseMatrix x_test = select_columns(task.x_test, keep);

  const fs::path dir(config.out_dir);
  const std::size_t t0 = task.first_test_time();
  double scores[2];
  const harvest::HarvestModel* models[2] = {&fixed, &relearned};
  const char* names[2] = {"fixed", "relearn"};
  for (int mode = 0; mode < 2; ++mode) {
    const std::vector<double> pred = harvest::predict(*models[mode], x_test);
    scores[mode] = eval::nrmse(task.y_test, pred);
    PredictionSeries ps;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      ps.t.push_back(t0 + i);
      ps.actual.push_back(task.y_test[i]);
      ps.predicted.push_back(pred[i]);
    }
    write_prediction_csv(ps, dir / (std::string("prediction_") + names[mode] + ".csv"));
  }

  std::string removed_list;
  for (const auto& name : config.removed)
    removed_list += (removed_list.empty() ? "" : ";") + name;
  write_report_kv(
      dir / "ablate_report.csv",
      {{"removed", removed_list},
       {"nrmse_baseline", format_double(run.nrmse_test)},
       {"nrmse_fixed", format_double(scores[0])},
       {"nrmse_relearn", format_double(scores[1])},
       {"train_objective_fixed",
        format_double(harvest::ridge_objective(fixed, x_train, task.y_train))},
       {"train_objective_relearn",
        format_double(harvest::ridge_objective(relearned, x_train, task.y_train))}});

  std::cout << "ablate: removed {" << removed_list << "}, nrmse fixed "
            << format_double(scores[0]) << ", relearn " << format_double(scores[1])
            << " (baseline " << format_double(run.nrmse_test) << ") -> "
            << config.out_dir << "\n";
}

void run_sweep(const RunConfig& config) {
  validate_task_params(config);
  require_path(config.events, "--events");
  ensure_out_dir(config);

  const ingest::EventLog log = ingest::parse_events_file(config.events);
  const eval::SweepResult result =
      eval::sweep(log, task_spec(config), config.tau_grid, config.interval_grid);
  auto f = open_out(fs::path(config.out_dir) / "sweep.csv");
  eval::write_sweep_csv(result, f);

  std::size_t ok = 0;
  for (const auto& c : result.cells) ok += c.ok() ? 1 : 0;
  std::cout << "sweep: " << result.taus.size() << "x" << result.intervals.size()
            << " grid, " << ok << "/" << result.cells.size() << " cells ok -> "
            << config.out_dir << "/sweep.csv\n";
}

void run_spectrum(const RunConfig& config) {
  require_path(config.events, "--events");
  if (config.interval_s <= 0.0) throw InvalidArgument("interval_s must be > 0");
  ensure_out_dir(config);

  const std::string series = config.series.empty() ? config.target : config.series;
  const ingest::EventLog log = ingest::parse_events_file(config.events);
  const std::vector<std::string> names{series};
  const ingest::SeriesMatrix m = ingest::bin_counts(log, config.interval_s, &names);
  const eval::Spectrum sp = eval::power_spectrum(m.column(0));

  const fs::path out = fs::path(config.out_dir) / ("spectrum_" + series + ".csv");
  auto f = open_out(out);
  f << "freq,power\n";
  for (std::size_t i = 0; i < sp.power.size(); ++i)
    f << format_double(sp.frequency[i]) << ',' << format_double(sp.power[i]) << '\n';
  std::cout << "spectrum: " << series << ", " << sp.power.size() << " bins -> "
            << out.string() << "\n";
}

void run_embed(const RunConfig& config) {
  const std::string input = config.prediction.empty()
                                ? (fs::path(config.out_dir) / "prediction.csv").string()
                                : config.prediction;
  ensure_out_dir(config);
  const PredictionSeries pred = read_prediction_csv(input);

  const eval::AttractorCloud actual = eval::delay_embed(pred.actual, config.dim, config.lag);
  const eval::AttractorCloud predicted =
      eval::delay_embed(pred.predicted, config.dim, config.lag);
  write_attractor_csv(actual, fs::path(config.out_dir) / "attractor_actual.csv");
  write_attractor_csv(predicted, fs::path(config.out_dir) / "attractor_predicted.csv");
  std::cout << "embed: " << actual.size() << " points per cloud -> " << config.out_dir
            << "/attractor_{actual,predicted}.csv\n";
}

void run_wd(const RunConfig& config) {
  require_path(config.input_a, "--a");
  require_path(config.input_b, "--b");
  ensure_out_dir(config);

  const eval::AttractorCloud a = read_attractor_csv(config.input_a);
  const eval::AttractorCloud b = read_attractor_csv(config.input_b);
  const double d = eval::wasserstein(a, b, config.max_points, config.seed);

  auto f = open_out(fs::path(config.out_dir) / "wd.txt");
  f << format_double(d) << '\n';
  std::cout << "wd: " << format_double(d) << "\n";
}

void run_report(const RunConfig& config) {
  const fs::path dir(config.out_dir);
  std::size_t rendered = 0;

  const fs::path sweep_csv = dir / "sweep.csv";
  if (fs::exists(sweep_csv)) {
    std::ifstream f(sweep_csv);
    const eval::SweepResult result = eval::read_sweep_csv(f);
    open_out(dir / "heatmap.svg") << svg::sweep_heatmap(result);
    ++rendered;
  }

  for (const char* name : {"prediction.csv", "online_prediction.csv",
                           "prediction_fixed.csv", "prediction_relearn.csv"}) {
    const fs::path csv = dir / name;
    if (!fs::exists(csv)) continue;
    const PredictionSeries pred = read_prediction_csv(csv);
    if (pred.t.empty()) throw DataError(csv.string() + ": no rows");
    const fs::path out = dir / (fs::path(name).stem().string() + ".svg");
    open_out(out) << svg::prediction_lines(pred.t.front(), pred.actual, pred.predicted);
    ++rendered;
  }

  const fs::path att_a = dir / "attractor_actual.csv";
  const fs::path att_b = dir / "attractor_predicted.csv";
  if (fs::exists(att_a) && fs::exists(att_b)) {
    open_out(dir / "attractor.svg")
        << svg::attractor_scatter(read_attractor_csv(att_a), read_attractor_csv(att_b));
    ++rendered;
  }

  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("spectrum_", 0) != 0 || entry.path().extension() != ".csv") continue;
    std::ifstream f(entry.path());
    std::string line;
    if (!std::getline(f, line)) throw DataError(name + ": empty spectrum");
    eval::Spectrum sp;
    std::size_t lineno = 1;
    while (std::getline(f, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto fields = textio::split_csv_line(line);
      if (fields.size() != 2)
        throw DataError(name + " line " + std::to_string(lineno) + ": expected freq,power");
      sp.frequency.push_back(textio::parse_double(fields[0], name));
      sp.power.push_back(textio::parse_double(fields[1], name));
    }
    const std::string series = fs::path(name).stem().string().substr(9);
    open_out(dir / (fs::path(name).stem().string() + ".svg"))
        << svg::spectrum_chart(sp, series);
    ++rendered;
  }

  if (rendered == 0)
    throw DataError("report: no artifact CSVs found in " + config.out_dir);
  std::cout << "report: rendered " << rendered << " SVG file(s) in " << config.out_dir
            << "\n";
}

void write_prediction_csv(const PredictionSeries& p, const fs::path& path) {
  auto f = open_out(path);
  f << "t,actual,predicted\n";
  for (std::size_t i = 0; i < p.t.size(); ++i)
    f << p.t[i] << ',' << format_double(p.actual[i]) << ','
      << format_double(p.predicted[i]) << '\n';
}

PredictionSeries read_prediction_csv(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open prediction file " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw DataError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,actual,predicted")
    throw DataError(path.string() + ": expected header t,actual,predicted");

  PredictionSeries p;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = textio::split_csv_line(line);
    const std::string where = path.string() + " line " + std::to_string(lineno);
    if (fields.size() != 3) throw DataError(where + ": expected 3 fields");
    p.t.push_back(static_cast<std::size_t>(textio::parse_double(fields[0], where)));
    p.actual.push_back(textio::parse_double(fields[1], where));
    p.predicted.push_back(textio::parse_double(fields[2], where));
  }
  return p;
}

}  // namespace ch::cmd
