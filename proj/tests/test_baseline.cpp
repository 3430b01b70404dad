#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ch/ar.hpp"
#include "ch/errors.hpp"
#include "ch/metrics.hpp"
#include "ch/rng.hpp"

using namespace ch;
using namespace ch::baseline;

TEST_CASE("a constant series is reproduced with zero residual") {
  const std::vector<double> y(30, 2.5);
  for (const int p : {1, 3}) {
    const auto model = fit_ar(y, p, 2);
    double reconstructed = model.intercept;
    for (double c : model.coefficients) reconstructed += c * 2.5;
    CHECK(reconstructed == doctest::Approx(2.5).epsilon(1e-9));
    const auto pred = predict_ar(model, y);
    for (double v : pred) CHECK(v == doctest::Approx(2.5).epsilon(1e-9));
  }
}

TEST_CASE("fit_ar recovers a noiseless AR(1) generator") {
  std::vector<double> y{1.0};
  for (int t = 1; t < 60; ++t) y.push_back(0.9 * y.back());
  const auto model = fit_ar(y, 1, 1);
  CHECK(model.coefficients[0] == doctest::Approx(0.9).epsilon(1e-8));
  CHECK(std::fabs(model.intercept) < 1e-8);
}

TEST_CASE("held-out prediction of the known generator is essentially exact") {
  // Oscillating two-tap generator so the series neither decays nor explodes.
  std::vector<double> y{0.3, -0.2};
  for (int t = 2; t < 200; ++t)
    y.push_back(1.5 * y[t - 1] - 0.9 * y[t - 2]);

  const std::span<const double> train(y.data(), 120);
  const auto model = fit_ar(train, 2, 1);
  const auto pred = predict_ar(model, y, 120, 200);
  const std::vector<double> actual(y.begin() + 120, y.end());
  CHECK(eval::nrmse(actual, pred) < 1e-6);
}

TEST_CASE("the paper's p = 6 setting runs on a short series") {
  std::vector<double> y;
  auto eng = rng::make_engine(1);
  for (int i = 0; i < 14; ++i) y.push_back(rng::uniform01(eng));
  CHECK_NOTHROW(fit_ar(y, 6, 7));               // length == p + tau + 1
  y.pop_back();
  CHECK_THROWS_AS(fit_ar(y, 6, 7), InvalidArgument);  // one sample short
}

TEST_CASE("predict_ar with zero coefficients is the intercept") {
  ARModel m;
  m.p = 2;
  m.tau = 3;
  m.coefficients = {0.0, 0.0};
  m.intercept = 0.4;
  const std::vector<double> history(20, 1.0);
  for (double v : predict_ar(m, history)) CHECK(v == 0.4);
  CHECK_THROWS_AS(predict_ar(m, std::vector<double>(3, 1.0)), InvalidArgument);
}

TEST_CASE("fitted coefficients are a local least-squares minimum") {
  auto eng = rng::make_engine(2);
  std::vector<double> y;
  for (int t = 0; t < 80; ++t)
    y.push_back(std::sin(0.3 * t) + 0.1 * rng::uniform(eng, -1.0, 1.0));
  const int p = 3, tau = 2;
  const auto model = fit_ar(y, p, tau);

  auto rss = [&](const ARModel& m) {
    double total = 0.0;
    const auto window = static_cast<std::size_t>(p + tau);
    for (std::size_t t = window - 1; t < y.size(); ++t) {
      double v = m.intercept;
      for (int j = 0; j < p; ++j)
        v += m.coefficients[static_cast<std::size_t>(j)] * y[t + 1 - window + static_cast<std::size_t>(j)];
      total += (v - y[t]) * (v - y[t]);
    }
    return total;
  };

  const double base = rss(model);
  for (int k = 0; k < p; ++k)
    for (const double eps : {-1e-3, 1e-3}) {
      ARModel perturbed = model;
      perturbed.coefficients[static_cast<std::size_t>(k)] += eps;
      CHECK(rss(perturbed) >= base - 1e-12);
    }
  for (const double eps : {-1e-3, 1e-3}) {
    ARModel perturbed = model;
    perturbed.intercept += eps;
    CHECK(rss(perturbed) >= base - 1e-12);
  }
}

TEST_CASE("fit_ar is deterministic") {
  auto eng = rng::make_engine(3);
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) y.push_back(rng::uniform01(eng));
  const auto a = fit_ar(y, 4, 2);
  const auto b = fit_ar(y, 4, 2);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i)
    CHECK(a.coefficients[i] == b.coefficients[i]);
  CHECK(a.intercept == b.intercept);
}
