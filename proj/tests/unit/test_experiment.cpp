#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "holmc/experiment.hpp"
#include "json.hpp"

using namespace holmc;

TEST(Threshold, FirstStrictCrossing) {
  EXPECT_EQ(time_to_threshold({0.5, 0.09, 0.05}, {1, 2, 3}), 2u);
  EXPECT_FALSE(time_to_threshold({0.5, 0.2}, {1, 2}).has_value());
  EXPECT_FALSE(time_to_threshold({0.1}, {1}).has_value());
  EXPECT_EQ(time_to_threshold({0.3, 0.01}, {100, 200}), 200u);
}

TEST(Threshold, BestAccuracy) {
  EXPECT_EQ(best_accuracy({3, 1, 2}), 1);
  EXPECT_EQ(best_accuracy({4}), 4);
  EXPECT_THROW(best_accuracy({}), std::invalid_argument);
}

TEST(LogisticData, UnbiasedLabelsAtZero) {
  auto data = generate_logistic_data(3, 10000, Vector::Zero(3), 1);
  double mean = 0;
  for (int y : data.y) mean += y;
  mean /= data.count();
  EXPECT_GE(mean, 0.45);
  EXPECT_LE(mean, 0.55);
  EXPECT_TRUE(((data.z.array() == 1.0) || (data.z.array() == -1.0)).all());
}

TEST(LogisticData, ConditionalFrequency) {
  auto data = generate_logistic_data(2, 40000, Vector::Ones(2), 2);
  int rows = 0, ones = 0;
  for (int i = 0; i < data.count(); ++i)
    if (data.z(i, 0) == 1 && data.z(i, 1) == 1) {
      ++rows;
      ones += data.y[i];
    }
  ASSERT_GE(rows, 9000);
  const double p = std::exp(2.0) / (1 + std::exp(2.0));
  EXPECT_NEAR(static_cast<double>(ones) / rows, p, 0.03);
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig c;
  EXPECT_THROW(run_experiment(c), std::invalid_argument);  // empty lambda grid
  c.lambdas = {0.1};
  c.chains = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.chains = 2;
  c.lambdas = {-1};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.lambdas = {0.1};
  c.potential = "banana";
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Experiment, BudgetRules) {
  ExperimentConfig c;
  c.scenario = Scenario::figure1;
  EXPECT_EQ(c.iterations_for(0.1), 4000u);
  EXPECT_EQ(c.checkpoint_cadence(), 100u);
  c.scenario = Scenario::sampling_tables;
  EXPECT_EQ(c.iterations_for(0.025), 40000u);
  EXPECT_EQ(c.checkpoint_cadence(), 1u);
  c.scenario = Scenario::logistic;
  EXPECT_EQ(c.iterations_for(0.01), 100000u);
}

TEST(Experiment, Figure1GaussianHistogram) {
  ExperimentConfig c;
  c.scenario = Scenario::figure1;
  c.potential = "gaussian";
  c.dims = {10};
  c.lambdas = {0.1};
  c.chains = 250;
  c.algorithms = {Algorithm::aholla};
  const auto rep = run_experiment(c);
  const auto& cell = rep.cells.at(0);
  ASSERT_EQ(cell.finals.size(), 250u);
  std::vector<double> firsts;
  for (const auto& f : cell.finals) firsts.push_back(f[0]);
  EXPECT_LT(histogram_tv(firsts, *gaussian_marginal(), 30), 0.25);
}

TEST(Experiment, SummaryIndependentOfWorkers) {
  ExperimentConfig c;
  c.potential = "doublewell";
  c.dims = {5};
  c.lambdas = {0.1, 0.05};
  c.chains = 16;
  c.iterations = 200;
  c.seed = 1234;
  const auto one = run_experiment(c).summary_json();
  c.workers = 3;
  const auto three = run_experiment(c).summary_json();
  EXPECT_EQ(one, three);
  EXPECT_EQ(one, run_experiment(c).summary_json());
  c.seed = 1235;
  EXPECT_NE(one, run_experiment(c).summary_json());
}

TEST(Experiment, AbortAccounting) {
  ExperimentConfig c;
  c.potential = "doublewell";
  c.dims = {100};
  c.lambdas = {0.25};
  c.chains = 10;
  c.iterations = 100;
  c.algorithms = {Algorithm::ahola, Algorithm::lmc};
  const auto rep = run_experiment(c);
  EXPECT_EQ(rep.cell("doublewell_d100_aHOLA_lam0.25").aborted, 0);
  EXPECT_GT(rep.cell("doublewell_d100_LMC_lam0.25").aborted, 0);
  EXPECT_FALSE(rep.cell("doublewell_d100_aHOLA_lam0.25").warnings.empty());
  c.strict_lambda = true;
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(Experiment, WritesOutputs) {
  const auto dir = (std::filesystem::temp_directory_path() / "holmc_exp_out").string();
  std::filesystem::remove_all(dir);
  ExperimentConfig c;
  c.potential = "mixture";
  c.dims = {4};
  c.lambdas = {0.1};
  c.chains = 5;
  c.iterations = 30;
  c.checkpoint_every = 10;
  c.algorithms = {Algorithm::aholla};
  c.out_dir = dir;
  run_experiment(c);
  const std::string key = "mixture_d4_aHOLLA_lam0.1";
  std::ifstream series(dir + "/series_" + key + ".csv");
  std::string line;
  std::getline(series, line);
  EXPECT_EQ(line, "checkpoint,W1");
  int rows = 0;
  while (std::getline(series, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_TRUE(std::filesystem::exists(dir + "/samples_" + key + ".csv"));
  EXPECT_TRUE(std::filesystem::exists(dir + "/density_mixture_d4.csv"));
  std::ifstream sj(dir + "/summary.json");
  const auto j = nlohmann::json::parse(sj);
  EXPECT_EQ(j["cells"][0]["key"], key);
  EXPECT_TRUE(j.contains("config_hash"));
  EXPECT_TRUE(std::filesystem::exists(dir + "/timing.json"));
  std::filesystem::remove_all(dir);
}

TEST(Experiment, LogisticCellsReportMse) {
  ExperimentConfig c;
  c.scenario = Scenario::logistic;
  c.dims = {2};
  c.lambdas = {0.01};
  c.data_sizes = {100};
  c.chains = 4;
  c.iterations = 2000;
  c.algorithms = {Algorithm::aholla};
  const auto rep = run_experiment(c);
  ASSERT_EQ(rep.cells.size(), 1u);
  ASSERT_TRUE(rep.cells[0].mse.has_value());
  EXPECT_LT(*rep.cells[0].mse, 2.0);
  EXPECT_EQ(rep.cells[0].estimates.size(), 4u);
}

TEST(Experiment, PerStepCostRoughlyLinearInDimension) {
  // coarse guard: quadrupling d must not cost more than ~8x per step
  auto time_for = [](int d) {
    ExperimentConfig c;
    c.potential = "doublewell";
    c.dims = {d};
    c.lambdas = {0.05};
    c.chains = 4;
    c.iterations = 4000;
    c.checkpoint_every = 4000;
    c.algorithms = {Algorithm::ahola};
    return run_experiment(c).cells[0].seconds;
  };
  time_for(50);
  const double t50 = time_for(50), t200 = time_for(200);
  EXPECT_LT(t200, 8 * t50);
  EXPECT_GT(t200, 1.5 * t50);
}
