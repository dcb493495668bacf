#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holmc/dataset.hpp"
#include "holmc/log_value.hpp"
#include "holmc/potential.hpp"

namespace holmc {

struct SuperlinearAssumptions {
  double L = 0, K_h = 0, K_H = 0;
  double a = 0, b = 0, rbar = 0;
  int rho = 2;
  double q = 1.0;
  int d = 1;
  double beta = 1.0;
  double h0_norm = 0;         // |h(0)|
  double hess0_max = 0;       // max_i |nabla^2 h^(i)(0)|
  double jac0_max = 0;        // max_i |nabla h^(i)(0)|
  double hcomp0_max = 0;      // max_i |h^(i)(0)|
  double upsilon0_norm = 0;   // |Y(0)|

  void validate() const;
};

struct LinearAssumptions {
  double Lbar1 = 0, Lbar2 = 0, Lbar3 = 0;
  double abar = 0, bbar = 0;
  double q = 1.0;
  int d = 1;
  double beta = 1.0;
  double h0_norm = 0;
  double hess0_max = 0;

  void validate() const;
};

SuperlinearAssumptions double_well_assumptions(int d, double beta = 1.0);
LinearAssumptions gaussian_assumptions(int d, double beta = 1.0);
LinearAssumptions mixture_assumptions(const Vector& a_hat, double beta = 1.0);
LinearAssumptions logistic_assumptions(const LogisticDataset& data, double beta = 1.0);

struct GrowthConstants {
  double K0, K1, K2, K3d;
};
struct Dissipativity {
  double aD, bD, RD, bbarD;
};
struct OneSidedLipschitz {
  double LOS, ROS;
};

GrowthConstants growth_constants(const SuperlinearAssumptions& a);
Dissipativity dissipativity(const SuperlinearAssumptions& a);
OneSidedLipschitz one_sided_lipschitz(const SuperlinearAssumptions& a, double K1);
double lambda_max(const SuperlinearAssumptions& a, const Dissipativity& dis);
double lambda_max_linear(const LinearAssumptions& la, double Kbar1);

// Second and higher moment constants of the superlinear scheme.
class MomentConstants {
 public:
  MomentConstants(const SuperlinearAssumptions& a, const GrowthConstants& g, const Dissipativity& dis,
                  double M1 = 1.0);
  double kappa() const { return kappa_; }
  double M1() const { return M1_; }
  LogValue c0() const { return c0_; }
  LogValue c1() const { return c1_; }
  LogValue c(int p) const;
  LogValue cXi(int p) const;
  LogValue M2(int p) const;

 private:
  SuperlinearAssumptions a_;
  double K1_, aD_, kappa_, M1_;
  LogValue c0_, c1_;
};

// Lyapunov drift constants: c_V1(p) = a p/4, c_V2(p) = (3/4) a p v_p(M_V(p)).
struct DriftConstants {
  double a, bbar, d, beta;
  LogValue cV1(double p) const;
  LogValue cV2(double p) const;
  LogValue MV(double p) const;
};

// v_p(w) = (1 + w^2)^{p/2}
LogValue vp(double p, LogValue w);

struct Diagnostic {
  std::string code;
  std::string message;
};

struct Contraction {
  LogValue cdot, chat, phi_bar, epsilon, cdot0, cdot1;
  LogValue integral;
  std::vector<Diagnostic> diagnostics;
};

// L is L_OS (superlinear) or Lbar3 (linear).
Contraction contraction(double L, LogValue cV1_2, LogValue cV2_2, double beta);

struct ReportRow {
  std::string name;
  std::string group;
  LogValue value;
};

class ConstantsReport {
 public:
  Regime regime = Regime::superlinear;
  int d = 0;
  double beta = 1.0;
  double q = 1.0;
  int rho = 2;
  std::vector<ReportRow> rows;
  std::vector<Diagnostic> diagnostics;

  void add(const std::string& name, const std::string& group, LogValue v);
  bool has(const std::string& name) const;
  LogValue get(const std::string& name) const;
  // stepsize bound for the report's regime
  double step_bound() const;
  std::string to_json() const;

 private:
  std::map<std::string, std::size_t> index_;
};

ConstantsReport build_report(const SuperlinearAssumptions& a, double M1 = 1.0);
ConstantsReport build_report(const LinearAssumptions& la);

// Table row names the report must expose for each regime.
const std::vector<std::string>& superlinear_row_names();
const std::vector<std::string>& linear_row_names();

}  // namespace holmc
