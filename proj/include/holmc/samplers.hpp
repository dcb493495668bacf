#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "holmc/constants.hpp"
#include "holmc/potential.hpp"

namespace holmc {

// lmco_prime, mtula and hola are reserved tags without an implementation.
enum class Algorithm { ahola, aholla, lmc, lmco_prime, mtula, hola };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);
bool is_implemented(Algorithm a);

struct SamplerConfig {
  double lambda = 0.01;
  double beta = 1.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::ahola;
  Vector theta0;
  // record every thin-th state (0 keeps only the final state)
  std::uint64_t thin = 0;
  bool strict_lambda = false;
  // lambda_max or lambda_bar_max for the model, when known
  std::optional<double> lambda_bound;

  void validate() const;
};

// Three decorrelated standard normal streams derived from one seed.
class GaussianStreams {
 public:
  explicit GaussianStreams(std::uint64_t seed);
  void xi(Vector& out) { fill(0, out); }
  void xi_hat(Vector& out) { fill(1, out); }
  void xi_prime(Vector& out) { fill(2, out); }

 private:
  void fill(int k, Vector& out);
  std::mt19937_64 gen_[3];
  std::normal_distribution<double> dist_[3];
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

class ChainAborted : public std::runtime_error {
 public:
  ChainAborted(std::uint64_t iteration, const std::string& what)
      : std::runtime_error(what), iteration_(iteration) {}
  std::uint64_t iteration() const { return iteration_; }

 private:
  std::uint64_t iteration_;
};

struct Chain {
  std::vector<Vector> states;
  std::vector<std::uint64_t> iterations;
  Vector final_state;
  std::vector<std::string> warnings;
};

// phi = -h/g + (lambda/2)(H h/g^2 - Y/(beta g)); requires a superlinear model.
Vector ahola_drift(const PotentialModel& model, const Vector& theta, double lambda, double beta);
// sqrt(2 lambda/beta)[xi_hat - (lambda/2) H xi_hat/g + (sqrt3/6) lambda H xi_prime/g]
Vector ahola_noise(const PotentialModel& model, const Vector& theta, double lambda, double beta,
                   const Vector& xi_hat, const Vector& xi_prime);

// Shared order-1.5 update with an explicit taming factor g; one Hessian action per step.
Vector high_order_step(const PotentialModel& model, const Vector& theta, double lambda, double beta, double g,
                       const Vector& xi_hat, const Vector& xi_prime);

Vector ahola_step(const PotentialModel& model, const Vector& theta, double lambda, double beta,
                  const Vector& xi_hat, const Vector& xi_prime);
Vector aholla_step(const PotentialModel& model, const Vector& theta, double lambda, double beta,
                   const Vector& xi_hat, const Vector& xi_prime);
Vector lmc_step(const PotentialModel& model, const Vector& theta, double lambda, double beta, const Vector& xi);

// One step drawing fresh noise from the streams.
Vector step(const PotentialModel& model, const Vector& theta, const SamplerConfig& cfg, GaussianStreams& rng);

using StateObserver = std::function<void(std::uint64_t iteration, const Vector& theta)>;

// Throws ChainAborted on a non-finite state; observer sees theta_0 .. theta_n.
Chain run_chain(const PotentialModel& model, const SamplerConfig& cfg, const StateObserver& observer = {});

void write_chain_csv(const Chain& chain, const SamplerConfig& cfg, const std::string& path);

enum class Metric { W1, W2 };

struct Hyperparams {
  LogValue lambda;
  LogValue n;
  // set when n fits in an unsigned 64-bit integer
  std::optional<unsigned long long> n_int;
};

// moment is E|theta_0|^{16(rho+1)} (superlinear) or E|theta_0|^4 (linear).
Hyperparams select_hyperparams(const ConstantsReport& report, double delta, LogValue moment, Metric metric);

// Moment input for a deterministic start theta_0.
LogValue default_moment(const ConstantsReport& report, const Vector& theta0);

}  // namespace holmc
