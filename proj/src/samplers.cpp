#include "holmc/samplers.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "holmc/taming.hpp"
#include "json.hpp"

namespace holmc {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ahola: return "aHOLA";
    case Algorithm::aholla: return "aHOLLA";
    case Algorithm::lmc: return "LMC";
    case Algorithm::lmco_prime: return "LMCO'";
    case Algorithm::mtula: return "mTULA";
    case Algorithm::hola: return "HOLA";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  std::string t;
  for (char c : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "ahola") return Algorithm::ahola;
  if (t == "aholla") return Algorithm::aholla;
  if (t == "lmc") return Algorithm::lmc;
  if (t == "lmco'" || t == "lmco_prime" || t == "lmcoprime") return Algorithm::lmco_prime;
  if (t == "mtula") return Algorithm::mtula;
  if (t == "hola") return Algorithm::hola;
  throw std::invalid_argument("unknown algorithm: " + s);
}

bool is_implemented(Algorithm a) {
  return a == Algorithm::ahola || a == Algorithm::aholla || a == Algorithm::lmc;
}

void SamplerConfig::validate() const {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
  if (!(beta > 0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
  if (!is_implemented(algorithm))
    throw std::invalid_argument(to_string(algorithm) + " is a reserved algorithm tag without an implementation");
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined word
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GaussianStreams::GaussianStreams(std::uint64_t seed) {
  for (int k = 0; k < 3; ++k) gen_[k].seed(mix_seed(seed, 0x5eed0000ULL + k));
}

void GaussianStreams::fill(int k, Vector& out) {
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = dist_[k](gen_[k]);
}

namespace {

void require_regime(const PotentialModel& m, Regime r, const char* who) {
  if (m.regime() != r) {
    std::ostringstream os;
    os << who << " requires a " << to_string(r) << "-regime model; " << m.name() << " is " << to_string(m.regime());
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Vector ahola_drift(const PotentialModel& model, const Vector& theta, double lambda, double beta) {
  require_regime(model, Regime::superlinear, "aHOLA");
  const double g = taming_factor(model, theta, lambda);
  const Vector h = model.gradient(theta);
  return -h / g + 0.5 * lambda * (model.hvp(theta, h) / (g * g) - model.upsilon(theta) / (beta * g));
}

Vector ahola_noise(const PotentialModel& model, const Vector& theta, double lambda, double beta,
                   const Vector& xi_hat, const Vector& xi_prime) {
  require_regime(model, Regime::superlinear, "aHOLA");
  const double g = taming_factor(model, theta, lambda);
  const double s = std::sqrt(2 * lambda / beta);
  return s * (xi_hat - 0.5 * lambda * model.hvp(theta, xi_hat) / g +
              (std::sqrt(3.0) / 6) * lambda * model.hvp(theta, xi_prime) / g);
}

Vector high_order_step(const PotentialModel& model, const Vector& theta, double lambda, double beta, double g,
                       const Vector& xi_hat, const Vector& xi_prime) {
  const double s = std::sqrt(2 * lambda / beta);
  const Vector h = model.gradient(theta);
  // H is linear, so the drift and both noise terms share one Hessian action
  const Vector w = (0.5 * lambda * lambda / (g * g)) * h +
                   (s * lambda / g) * (-0.5 * xi_hat + (std::sqrt(3.0) / 6) * xi_prime);
  return theta - (lambda / g) * h - (0.5 * lambda * lambda / (beta * g)) * model.upsilon(theta) + s * xi_hat +
         model.hvp(theta, w);
}

Vector ahola_step(const PotentialModel& model, const Vector& theta, double lambda, double beta,
                  const Vector& xi_hat, const Vector& xi_prime) {
  require_regime(model, Regime::superlinear, "aHOLA");
  return high_order_step(model, theta, lambda, beta, taming_factor(model, theta, lambda), xi_hat, xi_prime);
}

Vector aholla_step(const PotentialModel& model, const Vector& theta, double lambda, double beta,
                   const Vector& xi_hat, const Vector& xi_prime) {
  require_regime(model, Regime::linear, "aHOLLA");
  return high_order_step(model, theta, lambda, beta, 1.0, xi_hat, xi_prime);
}

Vector lmc_step(const PotentialModel& model, const Vector& theta, double lambda, double beta, const Vector& xi) {
  return theta - lambda * model.gradient(theta) + std::sqrt(2 * lambda / beta) * xi;
}

Vector step(const PotentialModel& model, const Vector& theta, const SamplerConfig& cfg, GaussianStreams& rng) {
  const auto d = theta.size();
  if (cfg.algorithm == Algorithm::lmc) {
    Vector xi(d);
    rng.xi(xi);
    return lmc_step(model, theta, cfg.lambda, cfg.beta, xi);
  }
  Vector xh(d), xp(d);
  rng.xi_hat(xh);
  rng.xi_prime(xp);
  if (cfg.algorithm == Algorithm::ahola) return ahola_step(model, theta, cfg.lambda, cfg.beta, xh, xp);
  if (cfg.algorithm == Algorithm::aholla) return aholla_step(model, theta, cfg.lambda, cfg.beta, xh, xp);
  throw std::invalid_argument(to_string(cfg.algorithm) + " is a reserved algorithm tag without an implementation");
}

Chain run_chain(const PotentialModel& model, const SamplerConfig& cfg, const StateObserver& observer) {
  cfg.validate();
  if (cfg.theta0.size() != model.dimension()) throw std::invalid_argument("theta0 dimension does not match model");
  if (cfg.algorithm == Algorithm::ahola) require_regime(model, Regime::superlinear, "aHOLA");
  if (cfg.algorithm == Algorithm::aholla) require_regime(model, Regime::linear, "aHOLLA");
  Chain chain;
  if (cfg.lambda_bound && cfg.lambda > *cfg.lambda_bound) {
    std::ostringstream os;
    os << "lambda=" << cfg.lambda << " exceeds the theoretical bound " << *cfg.lambda_bound;
    if (cfg.strict_lambda) throw std::invalid_argument(os.str());
    chain.warnings.push_back(os.str());
  }
  GaussianStreams rng(cfg.seed);
  Vector theta = cfg.theta0;
  auto record = [&](std::uint64_t it) {
    if (cfg.thin > 0 && it % cfg.thin == 0) {
      chain.states.push_back(theta);
      chain.iterations.push_back(it);
    }
    if (observer) observer(it, theta);
  };
  record(0);
  for (std::uint64_t it = 1; it <= cfg.n; ++it) {
    theta = step(model, theta, cfg, rng);
    if (!theta.allFinite()) {
      std::ostringstream os;
      os << to_string(cfg.algorithm) << " produced a non-finite state at iteration " << it;
      throw ChainAborted(it, os.str());
    }
    record(it);
  }
  chain.final_state = theta;
  return chain;
}

void write_chain_csv(const Chain& chain, const SamplerConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.precision(17);
  auto row = [&](const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << '\n';
  };
  if (chain.states.empty())
    row(chain.final_state);
  else
    for (const auto& s : chain.states) row(s);

  nlohmann::ordered_json j;
  j["algorithm"] = to_string(cfg.algorithm);
  j["lambda"] = cfg.lambda;
  j["beta"] = cfg.beta;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["thin"] = cfg.thin;
  j["theta0"] = std::vector<double>(cfg.theta0.data(), cfg.theta0.data() + cfg.theta0.size());
  j["iterations"] = chain.states.empty() ? std::vector<std::uint64_t>{cfg.n} : chain.iterations;
  j["warnings"] = chain.warnings;
  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("cannot open " + path + ".json");
  side << j.dump(2) << '\n';
}

namespace {
using LV = LogValue;
}

Hyperparams select_hyperparams(const ConstantsReport& report, double delta, LogValue moment, Metric metric) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  const bool lin = report.regime == Regime::linear;
  const bool w1 = metric == Metric::W1;
  auto row = [&](int k) { return report.get((lin ? "C_Lin" : "C") + std::to_string(k)); };
  const LV Crate = row(w1 ? 0 : 3), Cinit = row(w1 ? 1 : 4), Cbias = row(w1 ? 2 : 5);
  const LV lmax = report.get(lin ? "lambda_max_linear" : "lambda_max");
  const double e = (w1 ? 2.0 : 4.0) / (2.0 + report.q);
  const LV dl = LV::of(delta);

  Hyperparams hp;
  hp.lambda = min(pow(dl / (2.0 * Cbias), e), lmax);
  const LV fac = max(pow(2.0 * Cbias / dl, e) / Crate, LV::one() / (lmax * Crate));
  const LV mterm = w1 ? (moment + 1.0) : sqrt(moment + 1.0);
  const double ln_arg = (2.0 * Cinit * mterm / dl).log();
  if (ln_arg <= 0) {
    hp.n = LV::zero();
    hp.n_int = 0;
    return hp;
  }
  hp.n = fac * LV::of(ln_arg);
  if (hp.n.log() < std::log(1.8e19)) {
    hp.n_int = static_cast<unsigned long long>(std::ceil(hp.n.value()));
  }
  return hp;
}

LogValue default_moment(const ConstantsReport& report, const Vector& theta0) {
  const double k = report.regime == Regime::linear ? 4.0 : 16.0 * (report.rho + 1);
  const double n = theta0.norm();
  if (n == 0) return LV::zero();
  return exp_of(k * std::log(n));
}

}  // namespace holmc
