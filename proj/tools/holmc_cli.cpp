#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "holmc/constants.hpp"
#include "holmc/experiment.hpp"
#include "holmc/metrics.hpp"
#include "holmc/samplers.hpp"
#include "json.hpp"

using namespace holmc;

namespace {

struct Common {
  std::string potential;
  std::vector<int> dims;
  std::vector<double> lambdas;
  int chains = 0;
  double beta = 1.0;
  std::uint64_t seed = 1;
  std::string out;
  bool strict = false;
  std::vector<std::string> algorithms;
  std::uint64_t iterations = 0;
  std::uint64_t checkpoint_every = 0;
  int workers = 1;
  double threshold = 0.1;
  std::vector<double> theta0;
};

void add_common(CLI::App* sc, Common& c) {
  sc->add_option("--potential", c.potential, "gaussian | mixture | doublewell");
  sc->add_option("--dim", c.dims, "dimension (repeatable)");
  sc->add_option("--lambda", c.lambdas, "stepsize (repeatable)");
  sc->add_option("--chains", c.chains, "independent chains per cell");
  sc->add_option("--beta", c.beta, "inverse temperature");
  sc->add_option("--seed", c.seed, "master seed");
  sc->add_option("--out", c.out, "output directory");
  sc->add_flag("--strict-lambda", c.strict, "reject stepsizes above the theoretical bound");
  sc->add_option("--algorithms", c.algorithms, "aHOLA, aHOLLA, LMC")->delimiter(',');
  sc->add_option("--iterations", c.iterations, "override the iteration budget rule");
  sc->add_option("--checkpoint-every", c.checkpoint_every, "W1 evaluation cadence");
  sc->add_option("--workers", c.workers, "threads per cell");
  sc->add_option("--threshold", c.threshold, "W1 threshold for first-crossing");
}

ExperimentConfig to_config(Scenario s, const Common& c) {
  ExperimentConfig cfg;
  cfg.scenario = s;
  if (!c.potential.empty()) cfg.potential = c.potential;
  if (!c.dims.empty()) cfg.dims = c.dims;
  cfg.lambdas = c.lambdas;
  if (c.chains > 0) cfg.chains = c.chains;
  cfg.beta = c.beta;
  cfg.seed = c.seed;
  cfg.out_dir = c.out;
  cfg.strict_lambda = c.strict;
  for (const auto& a : c.algorithms) cfg.algorithms.push_back(parse_algorithm(a));
  cfg.iterations = c.iterations;
  cfg.checkpoint_every = c.checkpoint_every;
  cfg.workers = c.workers;
  cfg.threshold = c.threshold;
  return cfg;
}

void print_summary(const ExperimentReport& rep) {
  for (const auto& cell : rep.cells) {
    std::cout << cell.key << ": ";
    if (cell.potential == "logistic") {
      std::cout << "mse=" << (cell.mse ? std::to_string(*cell.mse) : "NA");
    } else {
      std::cout << "first<thr=" << (cell.first_below ? std::to_string(*cell.first_below) : "NA")
                << " best_w1=" << (cell.best_w1 ? std::to_string(*cell.best_w1) : "NA");
    }
    std::cout << " aborted=" << cell.aborted << " seconds=" << cell.seconds << '\n';
    for (const auto& w : cell.warnings) std::cerr << "warning: " << cell.key << ": " << w << '\n';
  }
}

ConstantsReport report_for(const std::string& potential, int d, double beta, double m1, std::uint64_t seed,
                           int data_size) {
  if (potential == "doublewell") return build_report(double_well_assumptions(d, beta), m1);
  if (potential == "gaussian") return build_report(gaussian_assumptions(d, beta));
  if (potential == "mixture") return build_report(mixture_assumptions(mixture_center(d), beta));
  if (potential == "logistic")
    return build_report(logistic_assumptions(generate_logistic_data(d, data_size, Vector::Ones(d), seed), beta));
  throw std::invalid_argument("unknown potential " + potential);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order Langevin samplers: experiments, constants and hyperparameter selection"};
  app.require_subcommand(1);

  Common fig, tab, logi;
  auto* f1 = app.add_subcommand("figure1", "final first-component samples after lambda*n = 400");
  add_common(f1, fig);
  auto* tb = app.add_subcommand("tables", "W1 series, first crossing and best accuracy per (algorithm, lambda)");
  add_common(tb, tab);
  auto* lg = app.add_subcommand("logistic", "Bayesian logistic regression MSE");
  add_common(lg, logi);
  std::vector<int> data_sizes;
  int tail = 200;
  lg->add_option("--data-size", data_sizes, "number of observations (repeatable)");
  lg->add_option("--tail", tail, "trailing states averaged per chain");

  std::string c_potential = "doublewell";
  int c_dim = 100;
  double c_beta = 1.0, c_m1 = 1.0;
  std::uint64_t c_seed = 1;
  int c_n = 500;
  std::string c_out;
  auto* cs = app.add_subcommand("constants", "dump the constants report as JSON");
  cs->add_option("--potential", c_potential, "gaussian | mixture | doublewell | logistic");
  cs->add_option("--dim", c_dim);
  cs->add_option("--beta", c_beta);
  cs->add_option("--m1", c_m1, "convexity-at-infinity constant M1 (superlinear)");
  cs->add_option("--seed", c_seed, "seed for the synthetic logistic dataset");
  cs->add_option("--data-size", c_n, "logistic dataset size");
  cs->add_option("--out", c_out, "write JSON to this file instead of stdout");

  std::string s_potential = "doublewell", s_metric = "W1";
  int s_dim = 100, s_n = 500;
  double s_beta = 1.0, s_delta = 0.1, s_theta0 = 2.0, s_m1 = 1.0;
  std::uint64_t s_seed = 1;
  auto* sl = app.add_subcommand("select", "stepsize and iteration count reaching accuracy delta");
  sl->add_option("--potential", s_potential);
  sl->add_option("--dim", s_dim);
  sl->add_option("--beta", s_beta);
  sl->add_option("--m1", s_m1);
  sl->add_option("--seed", s_seed);
  sl->add_option("--data-size", s_n);
  sl->add_option("--delta", s_delta, "target accuracy")->check(CLI::PositiveNumber);
  sl->add_option("--metric", s_metric, "W1 | W2");
  sl->add_option("--theta0", s_theta0, "value of every component of the deterministic start");

  std::string g_potential = "doublewell", g_out;
  int g_dim = 100, g_points = 801;
  auto* dg = app.add_subcommand("density-grid", "export the first-coordinate marginal density as x,pdf CSV");
  dg->add_option("--potential", g_potential);
  dg->add_option("--dim", g_dim);
  dg->add_option("--points", g_points);
  dg->add_option("--out", g_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (f1->parsed() || tb->parsed() || lg->parsed()) {
      ExperimentConfig cfg;
      if (f1->parsed()) {
        cfg = to_config(Scenario::figure1, fig);
        if (fig.chains <= 0) cfg.chains = 250;
        if (fig.dims.empty()) cfg.dims = {100};
      } else if (tb->parsed()) {
        cfg = to_config(Scenario::sampling_tables, tab);
      } else {
        cfg = to_config(Scenario::logistic, logi);
        if (logi.chains <= 0) cfg.chains = 50;
        if (logi.dims.empty()) cfg.dims = {2};
        if (logi.lambdas.empty()) cfg.lambdas = {0.01};
        if (!data_sizes.empty()) cfg.data_sizes = data_sizes;
        cfg.tail = tail;
      }
      const auto rep = run_experiment(cfg);
      print_summary(rep);
      if (cfg.out_dir.empty()) std::cout << rep.summary_json() << '\n';
      return 0;
    }
    if (cs->parsed()) {
      const auto rep = report_for(c_potential, c_dim, c_beta, c_m1, c_seed, c_n);
      if (c_out.empty()) {
        std::cout << rep.to_json() << '\n';
      } else {
        std::ofstream(c_out) << rep.to_json() << '\n';
      }
      return 0;
    }
    if (sl->parsed()) {
      const auto rep = report_for(s_potential, s_dim, s_beta, s_m1, s_seed, s_n);
      Metric m;
      if (s_metric == "W1" || s_metric == "w1")
        m = Metric::W1;
      else if (s_metric == "W2" || s_metric == "w2")
        m = Metric::W2;
      else
        throw std::invalid_argument("metric must be W1 or W2");
      const Vector theta0 = Vector::Constant(s_dim, s_theta0);
      const auto hp = select_hyperparams(rep, s_delta, default_moment(rep, theta0), m);
      nlohmann::ordered_json j;
      j["potential"] = s_potential;
      j["d"] = s_dim;
      j["delta"] = s_delta;
      j["metric"] = s_metric;
      j["lambda"] = {{"value", hp.lambda.representable() ? nlohmann::ordered_json(hp.lambda.value()) : nullptr},
                     {"log10", hp.lambda.log10()}};
      j["n"] = {{"value", hp.n_int ? nlohmann::ordered_json(*hp.n_int) : nullptr}, {"log10", hp.n.log10()}};
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (dg->parsed()) {
      write_density_grid_csv(*marginal_for(g_potential, g_dim), g_out, g_points);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
