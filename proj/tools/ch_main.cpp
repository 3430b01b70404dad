#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ch/commands.hpp"
#include "ch/errors.hpp"

namespace {

using ch::cmd::RunConfig;

// Config file first, CH_SEED second, explicit flags last.
void load_config_if_given(RunConfig& config, int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      ch::cmd::load_config_file(config, argv[i + 1]);
      return;
    }
    if (arg.rfind("--config=", 0) == 0) {
      ch::cmd::load_config_file(config, arg.substr(9));
      return;
    }
  }
}

void add_task_options(CLI::App* app, RunConfig& c) {
  app->add_option("--target", c.target, "Target series name, e.g. 5e");
  app->add_option("--tau", c.tau, "Forecasting horizon in bins");
  app->add_option("--interval", c.interval_s, "Bin width in seconds");
  app->add_option("--p", c.p, "Maximum multiplexing shift");
  app->add_option("--beta", c.beta, "Ridge regularization");
  app->add_option("--r", c.r, "Training fraction");
  app->add_option("--exclude", c.exclude, "Series kept out of the features");
  app->add_flag("--intercept,!--no-intercept", c.intercept, "Constant feature");
}

void add_common_options(CLI::App* app, RunConfig& c) {
  // The config file was already consumed by load_config_if_given; this
  // option only keeps CLI11 from rejecting the flag.
  static std::string config_sink;
  app->add_option("--config", config_sink, "JSON config file (flags override it)");
  app->add_option("--out", c.out_dir, "Output directory");
  app->add_option("--seed", c.seed, "Random seed");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  try {
    load_config_if_given(config, argc, argv);
    ch::cmd::apply_env_seed(config);
  } catch (const ch::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  CLI::App app{"computation-harvesting toolkit: traffic simulation, linear "
               "readout fitting, and evaluation"};
  app.require_subcommand(1);
  std::map<std::string, std::function<void(const RunConfig&)>> actions;

  auto* sim = app.add_subcommand("simulate", "Run the lattice traffic reservoir");
  add_common_options(sim, config);
  sim->add_option("--rows", config.rows, "Lattice rows");
  sim->add_option("--cols", config.cols, "Lattice columns");
  sim->add_option("--steps", config.steps, "Simulation steps");
  sim->add_option("--seconds-per-step", config.seconds_per_step, "Step length in seconds");
  sim->add_option("--rate-min", config.rate_min, "Slowest signal rate (rad/step)");
  sim->add_option("--rate-max", config.rate_max, "Fastest signal rate (rad/step)");
  sim->add_option("--periods", config.periods,
                  "Discrete signal cycle lengths in steps (overrides the rate range)");
  sim->add_option("--init-lo", config.init_lo, "Minimum initial load per link");
  sim->add_option("--init-hi", config.init_hi, "Maximum initial load per link");
  sim->add_flag("--torus,!--open", config.torus, "Torus wrap (default) or open boundary");
  actions["simulate"] = ch::cmd::run_simulate;

  auto* fit = app.add_subcommand("fit", "Fit the harvesting readout on an event log");
  add_common_options(fit, config);
  add_task_options(fit, config);
  fit->add_option("--events", config.events, "Event CSV");
  fit->add_option("--top-k", config.top_k, "Ranked features to report");
  actions["fit"] = ch::cmd::run_fit;

  auto* pre = app.add_subcommand("predict", "Apply a stored model to an event log");
  add_common_options(pre, config);
  pre->add_option("--model", config.model, "Model JSON");
  pre->add_option("--events", config.events, "Event CSV");
  actions["predict"] = ch::cmd::run_predict;

  auto* onl = app.add_subcommand("online", "Growing-prefix readout updates");
  add_common_options(onl, config);
  add_task_options(onl, config);
  onl->add_option("--events", config.events, "Event CSV");
  onl->add_option("--r1", config.r1, "Initial training fraction");
  onl->add_option("--r2", config.r2, "Test-to-training ratio (r2 >= r1)");
  onl->add_option("--r1-grid", config.r1_grid, "r1 values for the grid CSV");
  onl->add_option("--r2-grid", config.r2_grid, "r2 values for the grid CSV");
  actions["online"] = ch::cmd::run_online;

  auto* abl = app.add_subcommand("ablate", "Remove series in fixed and relearn modes");
  add_common_options(abl, config);
  add_task_options(abl, config);
  abl->add_option("--events", config.events, "Event CSV");
  abl->add_option("--removed", config.removed, "Series to remove");
  actions["ablate"] = ch::cmd::run_ablate;

  auto* swp = app.add_subcommand("sweep", "NRMSE over a (tau, interval) grid");
  add_common_options(swp, config);
  add_task_options(swp, config);
  swp->add_option("--events", config.events, "Event CSV");
  swp->add_option("--tau-grid", config.tau_grid, "Tau values");
  swp->add_option("--interval-grid", config.interval_grid, "Interval values (s)");
  actions["sweep"] = ch::cmd::run_sweep;

  auto* spc = app.add_subcommand("spectrum", "Power spectrum of one binned series");
  add_common_options(spc, config);
  spc->add_option("--events", config.events, "Event CSV");
  spc->add_option("--series", config.series, "Series name (defaults to --target)");
  spc->add_option("--target", config.target, "Fallback series name");
  spc->add_option("--interval", config.interval_s, "Bin width in seconds");
  actions["spectrum"] = ch::cmd::run_spectrum;

  auto* emb = app.add_subcommand("embed", "Delay-embed a prediction CSV");
  add_common_options(emb, config);
  emb->add_option("--prediction", config.prediction, "Prediction CSV (t,actual,predicted)");
  emb->add_option("--dim", config.dim, "Embedding dimension");
  emb->add_option("--lag", config.lag, "Embedding delay in steps");
  actions["embed"] = ch::cmd::run_embed;

  auto* wd = app.add_subcommand("wd", "Wasserstein distance between two attractor CSVs");
  add_common_options(wd, config);
  wd->add_option("--a", config.input_a, "First attractor CSV");
  wd->add_option("--b", config.input_b, "Second attractor CSV");
  wd->add_option("--max-points", config.max_points, "Subsampling cap");
  actions["wd"] = ch::cmd::run_wd;

  auto* rep = app.add_subcommand("report", "Render SVG views of run artifacts");
  add_common_options(rep, config);
  actions["report"] = ch::cmd::run_report;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    actions.at(app.get_subcommands().front()->get_name())(config);
    return 0;
  } catch (const ch::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ch::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ch::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
