// End-to-end checks of the ch binary: exit codes, config/flag precedence,
// and cross-command consistency. The binary path arrives via CH_BIN.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ch/commands.hpp"
#include "ch/metrics.hpp"

namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* bin = std::getenv("CH_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CH_BIN must point at the ch binary");
  return bin;
}

int run(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE_MESSAGE(f.good(), ("missing file " + p.string()));
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

double report_value(const fs::path& report, const std::string& key) {
  std::ifstream f(report);
  REQUIRE(f.good());
  std::string line;
  while (std::getline(f, line))
    if (line.rfind(key + ",", 0) == 0) return std::stod(line.substr(key.size() + 1));
  FAIL(("key not found: " + key));
  return 0.0;
}

}  // namespace

TEST_CASE("usage errors exit with code 2 before touching data") {
  CHECK(run("fit --events does/not/exist.csv --tau 5 --p 6") == 2);
  CHECK(run("fit --events does/not/exist.csv --r 1.5") == 2);
  CHECK(run("simulate --steps 0 --out cli_scratch/unused") == 2);
  CHECK(run("simulate --rows 1 --out cli_scratch/unused") == 2);
  CHECK(run("definitely-not-a-command") == 2);
}

TEST_CASE("missing input files exit with code 3") {
  CHECK(run("fit --events does/not/exist.csv --out cli_scratch/unused") == 3);
  CHECK(run("predict --model nope.json --events nope.csv --out cli_scratch/unused") == 3);
}

TEST_CASE("simulate then fit then predict are mutually consistent") {
  const fs::path dir = scratch_dir("flow");
  CHECK(run("simulate --out " + dir.string() + " --rows 3 --cols 3 --steps 1500 --seed 42") == 0);
  CHECK(run("fit --out " + dir.string() + " --events " + (dir / "events.csv").string() +
            " --interval 1 --tau 7 --p 6") == 0);
  const fs::path dir2 = scratch_dir("flow_predict");
  CHECK(run("predict --out " + dir2.string() + " --model " + (dir / "model.json").string() +
            " --events " + (dir / "events.csv").string()) == 0);

  // NRMSE over the training slice of the predict output must match the fit
  // report's nrmse_train.
  const auto n_train = static_cast<std::size_t>(report_value(dir / "fit_report.csv", "n_train"));
  const double want = report_value(dir / "fit_report.csv", "nrmse_train");
  const auto pred = ch::cmd::read_prediction_csv(dir2 / "prediction.csv");
  REQUIRE(pred.t.size() > n_train);
  const std::vector<double> actual(pred.actual.begin(), pred.actual.begin() + n_train);
  const std::vector<double> predicted(pred.predicted.begin(),
                                      pred.predicted.begin() + n_train);
  CHECK(ch::eval::nrmse(actual, predicted) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("reruns with the same seed are byte-identical") {
  const fs::path a = scratch_dir("det_a");
  const fs::path b = scratch_dir("det_b");
  const std::string flags = " --rows 3 --cols 3 --steps 400 --seed 7";
  CHECK(run("simulate --out " + a.string() + flags) == 0);
  CHECK(run("simulate --out " + b.string() + flags) == 0);
  CHECK(slurp(a / "events.csv") == slurp(b / "events.csv"));
  CHECK(slurp(a / "network.json") == slurp(b / "network.json"));
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
}

TEST_CASE("config file values apply and flags override them") {
  const fs::path dir = scratch_dir("config");
  {
    std::ofstream f(dir / "config.json");
    f << R"({"rows": 2, "cols": 3, "steps": 200, "seed": 9, "out_dir": ")"
      << (dir / "from_config").string() << R"("})" << "\n";
  }
  CHECK(run("simulate --config " + (dir / "config.json").string()) == 0);
  CHECK(fs::exists(dir / "from_config" / "events.csv"));

  CHECK(run("simulate --config " + (dir / "config.json").string() + " --out " +
            (dir / "override").string() + " --steps 100") == 0);
  const std::string meta = slurp(dir / "override" / "meta.json");
  CHECK(meta.find("\"steps\": 100") != std::string::npos);
  CHECK(meta.find("\"rows\": 2") != std::string::npos);  // config value kept

  CHECK(run("simulate --config " + (dir / "nonexistent.json").string()) == 3);
  {
    std::ofstream f(dir / "bad.json");
    f << R"({"definitely_unknown_key": 1})" << "\n";
  }
  CHECK(run("simulate --config " + (dir / "bad.json").string()) == 3);
}

TEST_CASE("CH_SEED overrides the config seed") {
  const fs::path dir = scratch_dir("envseed");
  const std::string cmd = "CH_SEED=777 " + binary() + " simulate --out " + dir.string() +
                          " --rows 2 --cols 2 --steps 50 >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(slurp(dir / "meta.json").find("\"seed\": 777") != std::string::npos);
}

TEST_CASE("ablate requires existing series and writes both modes") {
  const fs::path dir = scratch_dir("ablate");
  CHECK(run("simulate --out " + dir.string() + " --rows 3 --cols 3 --steps 800 --seed 5") == 0);
  const std::string events = (dir / "events.csv").string();
  CHECK(run("ablate --out " + dir.string() + " --events " + events +
            " --interval 1 --removed 9w --removed 9s --removed 8n") == 0);
  CHECK(fs::exists(dir / "prediction_fixed.csv"));
  CHECK(fs::exists(dir / "prediction_relearn.csv"));
  const double obj_fixed = report_value(dir / "ablate_report.csv", "train_objective_fixed");
  const double obj_relearn = report_value(dir / "ablate_report.csv", "train_objective_relearn");
  CHECK(obj_relearn <= obj_fixed);

  CHECK(run("ablate --out " + dir.string() + " --events " + events +
            " --interval 1 --removed no_such_series") == 2);
}

TEST_CASE("report renders SVGs for the artifacts present") {
  const fs::path dir = scratch_dir("report");
  CHECK(run("report --out " + dir.string()) == 3);  // nothing to render yet

  CHECK(run("simulate --out " + dir.string() + " --rows 3 --cols 3 --steps 900 --seed 3") == 0);
  const std::string events = (dir / "events.csv").string();
  CHECK(run("fit --out " + dir.string() + " --events " + events + " --interval 1") == 0);
  CHECK(run("sweep --out " + dir.string() + " --events " + events +
            " --tau-grid 7 --tau-grid 9 --interval-grid 1 --interval-grid 2") == 0);
  CHECK(run("spectrum --out " + dir.string() + " --events " + events +
            " --interval 1 --series 5e") == 0);
  CHECK(run("embed --out " + dir.string() + " --prediction " +
            (dir / "prediction.csv").string()) == 0);
  CHECK(run("wd --out " + dir.string() + " --a " + (dir / "attractor_actual.csv").string() +
            " --b " + (dir / "attractor_predicted.csv").string()) == 0);
  CHECK(run("report --out " + dir.string()) == 0);

  for (const char* f : {"heatmap.svg", "prediction.svg", "attractor.svg", "spectrum_5e.svg"})
    CHECK_MESSAGE(fs::exists(dir / f), f);
  const std::string heatmap = slurp(dir / "heatmap.svg");
  CHECK(heatmap.find("<svg") != std::string::npos);
  CHECK(heatmap.find("data-nrmse") != std::string::npos);
}

TEST_CASE("online writes schedule, prediction, and grid artifacts") {
  const fs::path dir = scratch_dir("online");
  CHECK(run("simulate --out " + dir.string() + " --rows 3 --cols 3 --steps 900 --seed 6") == 0);
  CHECK(run("online --out " + dir.string() + " --events " + (dir / "events.csv").string() +
            " --interval 1 --r1 0.5 --r2 0.8") == 0);
  CHECK(fs::exists(dir / "online_prediction.csv"));
  CHECK(fs::exists(dir / "schedule.csv"));
  const std::string grid = slurp(dir / "online_grid.csv");
  CHECK(grid.find("r1,r2,delta,nrmse,status") == 0);
  CHECK(grid.find("skipped: r2 < r1") != std::string::npos);

  CHECK(run("online --out " + dir.string() + " --events " + (dir / "events.csv").string() +
            " --interval 1 --r1 0.9 --r2 0.5") == 2);
}
