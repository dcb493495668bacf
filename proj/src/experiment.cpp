#include "holmc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "holmc/constants.hpp"
#include "json.hpp"

namespace holmc {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::figure1: return "figure1";
    case Scenario::sampling_tables: return "tables";
    case Scenario::logistic: return "logistic";
  }
  return "?";
}

std::vector<Algorithm> default_algorithms(const std::string& potential) {
  if (potential == "doublewell") return {Algorithm::ahola, Algorithm::lmc};
  return {Algorithm::aholla, Algorithm::lmc};
}

void ExperimentConfig::validate() const {
  if (lambdas.empty()) throw std::invalid_argument("lambda grid is empty");
  for (double l : lambdas)
    if (!(l > 0) || !std::isfinite(l)) throw std::invalid_argument("lambda grid values must be positive");
  if (chains < 1) throw std::invalid_argument("chain count must be >= 1");
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  if (dims.empty()) throw std::invalid_argument("dimension list is empty");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("dimensions must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  for (Algorithm a : algorithms)
    if (!is_implemented(a))
      throw std::invalid_argument(to_string(a) + " is a reserved algorithm tag without an implementation");
  if (scenario == Scenario::logistic) {
    if (data_sizes.empty()) throw std::invalid_argument("logistic data-size grid is empty");
    for (int n : data_sizes)
      if (n < 1) throw std::invalid_argument("data sizes must be >= 1");
    if (tail < 1) throw std::invalid_argument("tail length must be >= 1");
  } else {
    if (potential != "gaussian" && potential != "mixture" && potential != "doublewell")
      throw std::invalid_argument("unknown sampling potential: " + potential);
    if (potential == "doublewell")
      for (int d : dims)
        if (d < 2) throw std::invalid_argument("double-well W1 reference needs d >= 2");
  }
}

std::uint64_t ExperimentConfig::iterations_for(double lambda) const {
  if (iterations > 0) return iterations;
  switch (scenario) {
    case Scenario::figure1: return static_cast<std::uint64_t>(std::llround(400.0 / lambda));
    case Scenario::sampling_tables: return static_cast<std::uint64_t>(std::llround(1000.0 / lambda));
    case Scenario::logistic: return 100000;
  }
  return 0;
}

std::uint64_t ExperimentConfig::checkpoint_cadence() const {
  if (checkpoint_every > 0) return checkpoint_every;
  return scenario == Scenario::figure1 ? 100 : 1;
}

std::optional<std::uint64_t> time_to_threshold(const std::vector<double>& series,
                                               const std::vector<std::uint64_t>& checkpoints, double threshold) {
  if (series.size() > checkpoints.size()) throw std::invalid_argument("series longer than checkpoint list");
  for (std::size_t i = 0; i < series.size(); ++i)
    if (series[i] < threshold) return checkpoints[i];
  return std::nullopt;
}

double best_accuracy(const std::vector<double>& series) {
  if (series.empty()) throw std::invalid_argument("best_accuracy of an empty series");
  return *std::min_element(series.begin(), series.end());
}

LogisticDataset generate_logistic_data(int d, int N, const Vector& theta_star, std::uint64_t seed) {
  if (d < 1 || N < 1) throw std::invalid_argument("logistic data needs d, N >= 1");
  if (theta_star.size() != d) throw std::invalid_argument("theta_star dimension mismatch");
  std::mt19937_64 gen(mix_seed(seed, 0xda7a));
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  LogisticDataset data;
  data.z.resize(N, d);
  data.y.resize(N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < d; ++j) data.z(i, j) = coin(gen) ? 1.0 : -1.0;
    const double p = sigmoid(data.z.row(i).dot(theta_star));
    data.y[i] = unif(gen) < p ? 1 : 0;
  }
  return data;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

struct CellPlan {
  std::string key;
  std::string crn_key;  // shared across algorithms for common random numbers
  int d;
  int N;
  Algorithm alg;
  double lambda;
  ModelPtr model;
  MarginalPtr marginal;
  std::optional<double> bound;
};

std::optional<double> step_bound_for(const std::string& potential, int d, double beta, const LogisticDataset* data) {
  if (potential == "doublewell") {
    const auto a = double_well_assumptions(d, beta);
    return lambda_max(a, dissipativity(a));
  }
  LinearAssumptions la;
  if (potential == "gaussian")
    la = gaussian_assumptions(d, beta);
  else if (potential == "mixture")
    la = mixture_assumptions(mixture_center(d), beta);
  else
    la = logistic_assumptions(*data, beta);
  return lambda_max_linear(la, std::max(la.Lbar3, la.h0_norm));
}

ModelPtr model_for(const std::string& potential, int d) {
  if (potential == "gaussian") return make_gaussian(d);
  if (potential == "mixture") return make_gaussian_mixture(mixture_center(d));
  if (potential == "doublewell") return make_double_well(d);
  throw std::invalid_argument("unknown potential " + potential);
}

CellResult run_cell(const ExperimentConfig& cfg, const CellPlan& plan) {
  const auto t0 = std::chrono::steady_clock::now();
  CellResult res;
  res.key = plan.key;
  res.potential = cfg.scenario == Scenario::logistic ? "logistic" : cfg.potential;
  res.d = plan.d;
  res.data_size = plan.N;
  res.algorithm = plan.alg;
  res.lambda = plan.lambda;
  res.iterations = cfg.iterations_for(plan.lambda);
  const std::uint64_t n = res.iterations;

  if (plan.bound && plan.lambda > *plan.bound) {
    std::ostringstream os;
    os << "lambda=" << plan.lambda << " exceeds the theoretical bound " << *plan.bound;
    if (cfg.strict_lambda) throw std::invalid_argument(plan.key + ": " + os.str());
    res.warnings.push_back(os.str());
  }

  const std::uint64_t cad = cfg.checkpoint_cadence();
  std::vector<std::uint64_t> cps;
  const bool sampling = cfg.scenario != Scenario::logistic;
  if (sampling) {
    for (std::uint64_t it = cad; it <= n; it += cad) cps.push_back(it);
    if (cps.empty() || cps.back() != n) cps.push_back(n);
  }
  const std::size_t K = cps.size();
  const int C = cfg.chains;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // firsts[c * K + k]: first coordinate of chain c at checkpoint k
  std::vector<double> firsts(sampling ? static_cast<std::size_t>(C) * K : 0, nan);
  std::vector<Vector> finals(C), estimates(C);
  std::vector<std::optional<std::uint64_t>> aborted(C);

  const Vector theta0 = Vector::Constant(
      plan.d, cfg.theta0_value.value_or(cfg.scenario == Scenario::figure1 ? 0.0 : 2.0));
  const std::uint64_t base_seed = mix_seed(cfg.seed, fnv1a(plan.crn_key));

  auto run_one = [&](int c) {
    SamplerConfig sc;
    sc.lambda = plan.lambda;
    sc.beta = cfg.beta;
    sc.n = n;
    sc.seed = mix_seed(base_seed, static_cast<std::uint64_t>(c));
    sc.algorithm = plan.alg;
    sc.theta0 = theta0;
    std::size_t next = 0;
    const std::uint64_t tail = static_cast<std::uint64_t>(cfg.tail);
    Vector acc = Vector::Zero(plan.d);
    std::uint64_t acc_n = 0;
    auto observe = [&](std::uint64_t it, const Vector& th) {
      if (sampling) {
        if (next < K && cps[next] == it) firsts[static_cast<std::size_t>(c) * K + next++] = th[0];
      } else if (it + tail > n && it > 0) {
        acc += th;
        ++acc_n;
      }
    };
    try {
      Chain ch = run_chain(*plan.model, sc, observe);
      finals[c] = ch.final_state;
      if (!sampling) estimates[c] = acc / static_cast<double>(std::max<std::uint64_t>(acc_n, 1));
    } catch (const ChainAborted& e) {
      aborted[c] = e.iteration();
    }
  };

  const int W = std::min(cfg.workers, C);
  if (W <= 1) {
    for (int c = 0; c < C; ++c) run_one(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::mutex err_mu;
    std::exception_ptr err;
    for (int w = 0; w < W; ++w)
      pool.emplace_back([&] {
        for (int c = next++; c < C; c = next++) {
          try {
            run_one(c);
          } catch (...) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (!err) err = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }

  for (int c = 0; c < C; ++c) {
    if (aborted[c]) {
      ++res.aborted;
      res.abort_iterations.push_back(*aborted[c]);
    } else {
      res.finals.push_back(finals[c]);
      if (!sampling) res.estimates.push_back(estimates[c]);
    }
  }

  if (sampling) {
    const W1Evaluator w1(plan.marginal, std::max<std::size_t>(4 * static_cast<std::size_t>(C), 8192));
    std::vector<double> col;
    col.reserve(C);
    for (std::size_t k = 0; k < K; ++k) {
      col.clear();
      for (int c = 0; c < C; ++c) {
        const double v = firsts[static_cast<std::size_t>(c) * K + k];
        if (!std::isnan(v)) col.push_back(v);
      }
      if (col.empty()) break;
      res.checkpoints.push_back(cps[k]);
      res.w1.push_back(w1(col));
    }
    res.first_below = time_to_threshold(res.w1, res.checkpoints, cfg.threshold);
    if (!res.w1.empty()) res.best_w1 = best_accuracy(res.w1);
  } else if (!res.estimates.empty()) {
    res.mse = mse(res.estimates, Vector::Ones(plan.d));
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(c.scenario);
  j["potential"] = c.scenario == Scenario::logistic ? "logistic" : c.potential;
  j["dims"] = c.dims;
  j["lambdas"] = c.lambdas;
  std::vector<std::string> algs;
  for (Algorithm a : c.algorithms) algs.push_back(to_string(a));
  j["algorithms"] = algs;
  j["chains"] = c.chains;
  j["beta"] = c.beta;
  j["seed"] = c.seed;
  j["checkpoint_every"] = c.checkpoint_cadence();
  j["iterations_override"] = c.iterations;
  if (c.theta0_value) j["theta0_value"] = *c.theta0_value;
  if (c.scenario == Scenario::logistic) {
    j["data_sizes"] = c.data_sizes;
    j["tail"] = c.tail;
  }
  j["threshold"] = c.threshold;
  j["strict_lambda"] = c.strict_lambda;
  return j;
}

void write_outputs(const ExperimentReport& rep) {
  namespace fs = std::filesystem;
  const std::string& dir = rep.config.out_dir;
  fs::create_directories(dir);
  for (const auto& cell : rep.cells) {
    std::ofstream s(fs::path(dir) / ("samples_" + cell.key + ".csv"));
    s.precision(17);
    const auto& rows = cell.potential == "logistic" ? cell.estimates : cell.finals;
    for (int j = 0; j < cell.d; ++j) s << (j ? "," : "") << "theta" << (j + 1);
    s << '\n';
    for (const auto& r : rows) {
      for (Eigen::Index j = 0; j < r.size(); ++j) s << (j ? "," : "") << r[j];
      s << '\n';
    }
    if (cell.potential != "logistic") {
      std::ofstream w(fs::path(dir) / ("series_" + cell.key + ".csv"));
      w.precision(17);
      w << "checkpoint,W1\n";
      for (std::size_t k = 0; k < cell.w1.size(); ++k) w << cell.checkpoints[k] << ',' << cell.w1[k] << '\n';
    }
  }
  std::ofstream(fs::path(dir) / "summary.json") << rep.summary_json() << '\n';
  std::ofstream(fs::path(dir) / "timing.json") << rep.timing_json() << '\n';
  if (rep.config.scenario != Scenario::logistic) {
    std::vector<int> seen;
    for (const auto& cell : rep.cells) {
      if (std::find(seen.begin(), seen.end(), cell.d) != seen.end()) continue;
      seen.push_back(cell.d);
      write_density_grid_csv(*marginal_for(cell.potential, cell.d),
                             (fs::path(dir) / ("density_" + cell.potential + "_d" + std::to_string(cell.d) + ".csv")).string());
    }
  }
}

}  // namespace

std::string ExperimentReport::summary_json() const {
  nlohmann::ordered_json j;
  const auto cj = config_json(config);
  j["config"] = cj;
  std::ostringstream hs;
  hs << std::hex << std::setw(16) << std::setfill('0') << fnv1a(cj.dump());
  j["config_hash"] = hs.str();
  nlohmann::ordered_json cells_j = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json e;
    e["key"] = c.key;
    e["potential"] = c.potential;
    e["d"] = c.d;
    if (c.potential == "logistic") e["N"] = c.data_size;
    e["algorithm"] = to_string(c.algorithm);
    e["lambda"] = c.lambda;
    e["iterations"] = c.iterations;
    e["chains"] = config.chains;
    e["aborted"] = c.aborted;
    if (!c.abort_iterations.empty()) {
      e["first_abort_iteration"] = *std::min_element(c.abort_iterations.begin(), c.abort_iterations.end());
    }
    if (c.potential == "logistic") {
      e["mse"] = c.mse ? nlohmann::ordered_json(*c.mse) : nlohmann::ordered_json("NA");
    } else {
      e["first_below_threshold"] =
          c.first_below ? nlohmann::ordered_json(*c.first_below) : nlohmann::ordered_json("NA");
      e["best_w1"] = c.best_w1 ? nlohmann::ordered_json(*c.best_w1) : nlohmann::ordered_json("NA");
      e["final_w1"] = c.w1.empty() ? nlohmann::ordered_json("NA") : nlohmann::ordered_json(c.w1.back());
      e["checkpoints_evaluated"] = c.w1.size();
    }
    e["warnings"] = c.warnings;
    cells_j.push_back(e);
  }
  j["cells"] = cells_j;
  return j.dump(2);
}

std::string ExperimentReport::timing_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  double total = 0;
  for (const auto& c : cells) {
    total += c.seconds;
    const double steps = static_cast<double>(c.iterations) * config.chains;
    arr.push_back({{"key", c.key}, {"seconds", c.seconds}, {"seconds_per_step", steps > 0 ? c.seconds / steps : 0.0}});
  }
  j["cells"] = arr;
  j["total_seconds"] = total;
  j["workers"] = config.workers;
  return j.dump(2);
}

const CellResult& ExperimentReport::cell(const std::string& key) const {
  for (const auto& c : cells)
    if (c.key == key) return c;
  throw std::out_of_range("no experiment cell " + key);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg_in) {
  ExperimentConfig cfg = cfg_in;
  cfg.validate();
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<CellPlan> plans;
  const std::string pname = cfg.scenario == Scenario::logistic ? "logistic" : cfg.potential;
  const auto algs = cfg.algorithms.empty() ? default_algorithms(pname) : cfg.algorithms;
  if (cfg.algorithms.empty()) rep.config.algorithms = algs;

  for (int d : cfg.dims) {
    if (cfg.scenario == Scenario::logistic) {
      for (int N : cfg.data_sizes) {
        const std::string dkey = "logistic_d" + std::to_string(d) + "_N" + std::to_string(N);
        auto data = generate_logistic_data(d, N, Vector::Ones(d), mix_seed(cfg.seed, fnv1a(dkey)));
        auto bound = step_bound_for("logistic", d, cfg.beta, &data);
        auto model = make_logistic(std::move(data));
        for (Algorithm a : algs)
          for (double l : cfg.lambdas) {
            const std::string crn = dkey + "_lam" + fmt(l);
            plans.push_back({dkey + "_" + to_string(a) + "_lam" + fmt(l), crn, d, N, a, l, model, nullptr, bound});
          }
      }
    } else {
      auto model = model_for(cfg.potential, d);
      auto marg = marginal_for(cfg.potential, d);
      auto bound = step_bound_for(cfg.potential, d, cfg.beta, nullptr);
      const std::string dkey = cfg.potential + "_d" + std::to_string(d);
      for (Algorithm a : algs)
        for (double l : cfg.lambdas) {
          const std::string crn = dkey + "_lam" + fmt(l);
          plans.push_back({dkey + "_" + to_string(a) + "_lam" + fmt(l), crn, d, 0, a, l, model, marg, bound});
        }
    }
  }
  for (const auto& p : plans) rep.cells.push_back(run_cell(cfg, p));
  if (!cfg.out_dir.empty()) write_outputs(rep);
  return rep;
}

}  // namespace holmc
