#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holmc/dataset.hpp"
#include "holmc/metrics.hpp"
#include "holmc/samplers.hpp"

namespace holmc {

enum class Scenario { figure1, sampling_tables, logistic };

std::string to_string(Scenario s);

struct ExperimentConfig {
  Scenario scenario = Scenario::sampling_tables;
  std::string potential = "doublewell";  // gaussian | mixture | doublewell (sampling scenarios)
  std::vector<int> dims = {100};
  std::vector<double> lambdas;
  std::vector<Algorithm> algorithms;     // empty selects the defaults for the potential
  int chains = 200;
  double beta = 1.0;
  std::uint64_t seed = 1;
  // 0 selects the scenario default: every iteration (tables), every 100 (figure1)
  std::uint64_t checkpoint_every = 0;
  // 0 selects the scenario rule: 400/lambda (figure1), 1000/lambda (tables), 100000 (logistic)
  std::uint64_t iterations = 0;
  std::optional<double> theta0_value;    // all components; default 0 (figure1) or 2
  std::vector<int> data_sizes = {100, 500};  // logistic N grid
  double threshold = 0.1;
  int tail = 200;                        // logistic: states averaged per chain
  bool strict_lambda = false;
  int workers = 1;
  std::string out_dir;                   // empty disables file output

  void validate() const;
  std::uint64_t iterations_for(double lambda) const;
  std::uint64_t checkpoint_cadence() const;
};

struct CellResult {
  std::string key;
  std::string potential;
  int d = 0;
  int data_size = 0;  // logistic only
  Algorithm algorithm = Algorithm::ahola;
  double lambda = 0;
  std::uint64_t iterations = 0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> w1;
  std::optional<std::uint64_t> first_below;
  std::optional<double> best_w1;
  std::optional<double> mse;
  int aborted = 0;
  std::vector<std::uint64_t> abort_iterations;
  std::vector<std::string> warnings;
  std::vector<Vector> finals;     // final state per surviving chain
  std::vector<Vector> estimates;  // logistic tail means
  double seconds = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<CellResult> cells;
  std::string summary_json() const;
  std::string timing_json() const;
  const CellResult& cell(const std::string& key) const;
};

LogisticDataset generate_logistic_data(int d, int N, const Vector& theta_star, std::uint64_t seed);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// First checkpoint whose value is strictly below the threshold.
std::optional<std::uint64_t> time_to_threshold(const std::vector<double>& series,
                                               const std::vector<std::uint64_t>& checkpoints,
                                               double threshold = 0.1);
double best_accuracy(const std::vector<double>& series);

std::vector<Algorithm> default_algorithms(const std::string& potential);

}  // namespace holmc
