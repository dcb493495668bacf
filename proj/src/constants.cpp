#include "holmc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "holmc/quadrature.hpp"
#include "json.hpp"

namespace holmc {

namespace {

using LV = LogValue;
LV L(double x) { return LV::of(x); }
int iceil(double p) { return static_cast<int>(std::ceil(p - 1e-12)); }

std::string fmt_p(double p) {
  std::ostringstream os;
  os << std::setprecision(12) << p;
  return os.str();
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

constexpr double kAstronomical = 700.0;

}  // namespace

void SuperlinearAssumptions::validate() const {
  require(L >= 0 && std::isfinite(L), "L must be finite and nonnegative");
  require(K_h > 0, "K_h must be positive");
  require(K_H > 0, "K_H must be positive");
  require(a > 0 && b > 0, "a and b must be positive");
  require(rho >= 2, "rho must be >= 2");
  require(q > 0 && q <= 1, "q must lie in (0, 1]");
  require(rbar >= 0 && rbar < rho + q - 1, "rbar must lie in [0, rho+q-1)");
  require(d >= 1, "d must be >= 1");
  require(beta > 0, "beta must be positive");
  require(h0_norm >= 0 && hess0_max >= 0 && jac0_max >= 0 && hcomp0_max >= 0 && upsilon0_norm >= 0,
          "base values must be nonnegative");
}

void LinearAssumptions::validate() const {
  require(Lbar1 >= 0 && Lbar2 >= 0, "Lbar1 and Lbar2 must be nonnegative");
  require(Lbar3 > 0, "Lbar3 must be positive");
  require(abar > 0, "abar must be positive");
  require(bbar >= 0, "bbar must be nonnegative");
  require(q > 0 && q <= 1, "q must lie in (0, 1]");
  require(d >= 1, "d must be >= 1");
  require(beta > 0, "beta must be positive");
  require(h0_norm >= 0 && hess0_max >= 0, "base values must be nonnegative");
}

SuperlinearAssumptions double_well_assumptions(int d, double beta) {
  SuperlinearAssumptions a;
  a.L = 6;
  a.K_h = 2;
  a.K_H = 3;
  a.a = 0.5;
  a.b = 1;
  a.rbar = 0;
  a.rho = 2;
  a.q = 1;
  a.d = d;
  a.beta = beta;
  a.jac0_max = 1;  // grad h^(i)(0) = -e_i
  a.validate();
  return a;
}

LinearAssumptions gaussian_assumptions(int d, double beta) {
  LinearAssumptions la;
  la.Lbar1 = 0;
  la.Lbar2 = 0;
  la.Lbar3 = 1;
  la.abar = 1;
  la.bbar = 0;
  la.d = d;
  la.beta = beta;
  la.validate();
  return la;
}

LinearAssumptions mixture_assumptions(const Vector& a_hat, double beta) {
  const double n = a_hat.norm();
  require(n > 1, "mixture centre must satisfy |a_hat| > 1");
  LinearAssumptions la;
  la.Lbar1 = 56 * std::pow(n, 4);
  la.Lbar2 = 8 * std::pow(n, 3);
  la.Lbar3 = 1 + 4 * n * n;
  la.abar = 0.5;
  la.bbar = 0.5 * n * n;
  la.d = static_cast<int>(a_hat.size());
  la.beta = beta;
  la.validate();
  return la;
}

LinearAssumptions logistic_assumptions(const LogisticDataset& data, double beta) {
  data.validate();
  LinearAssumptions la;
  double s2 = 0, s3 = 0, s4 = 0, off = 0;
  Vector h0 = Vector::Zero(data.dimension());
  for (int i = 0; i < data.count(); ++i) {
    const double n2 = data.z.row(i).squaredNorm(), n1 = std::sqrt(n2);
    s2 += n2;
    s3 += n2 * n1;
    s4 += n2 * n2;
    off += std::abs(1.0 - data.y[i]) * n1;
    h0 += ((1.0 - data.y[i]) - 0.5) * data.z.row(i).transpose();
  }
  la.Lbar1 = s4;
  la.Lbar2 = s3;
  la.Lbar3 = 1 + s2;
  la.abar = 0.5;
  la.bbar = 0.5 * off * off + data.count();
  la.d = data.dimension();
  la.beta = beta;
  la.h0_norm = h0.norm();
  la.validate();
  return la;
}

GrowthConstants growth_constants(const SuperlinearAssumptions& a) {
  a.validate();
  GrowthConstants g{};
  g.K0 = std::pow(2.0, 1 - a.q) * std::max(a.L, a.hess0_max);
  g.K1 = std::max(g.K0, a.jac0_max);
  g.K2 = std::max(g.K1, a.hcomp0_max);
  g.K3d = std::max(std::pow(a.d, 1.5) * a.L, a.upsilon0_norm);
  return g;
}

Dissipativity dissipativity(const SuperlinearAssumptions& a) {
  a.validate();
  const double r = a.rho + a.q - 1;
  Dissipativity dis{};
  dis.aD = a.a / 2;
  dis.RD = std::max(std::pow(4 * a.b / a.a, 1 / (r - a.rbar)), std::pow(2.0, 1 / r));
  dis.bD = (a.a / 2 + a.b) * std::pow(dis.RD, a.rbar + 2) + a.h0_norm * a.h0_norm / (2 * a.a);
  dis.bbarD = dis.aD + dis.bD;
  return dis;
}

OneSidedLipschitz one_sided_lipschitz(const SuperlinearAssumptions& a, double K1) {
  a.validate();
  const double r = a.rho + a.q - 1;
  OneSidedLipschitz o{};
  o.ROS = std::pow(a.b / a.a, 1 / (r - a.rbar));
  o.LOS = std::sqrt(static_cast<double>(a.d)) * K1 * std::pow(1 + 2 * o.ROS, a.rho + a.q - 1);
  return o;
}

double lambda_max(const SuperlinearAssumptions& a, const Dissipativity& dis) {
  require(a.K_h > 0 && a.K_H > 0, "lambda_max requires K_h > 0 and K_H > 0");
  require(dis.aD > 0, "lambda_max requires a_D > 0");
  const double kh = a.K_h, kH = a.K_H, aD = dis.aD;
  return std::min({1.0, 1 / aD, std::pow(19 * aD / (240 * kh * std::max(kH, kh)), 2),
                   std::pow(aD / (120 * kh * kh * kH * kH), 2.0 / 3.0), aD / (480 * kh * kh * kH)});
}

double lambda_max_linear(const LinearAssumptions& la, double Kbar1) {
  la.validate();
  require(Kbar1 > 0, "lambda_max_linear requires Kbar1 > 0");
  const double ab = la.abar, L3 = la.Lbar3, k = Kbar1;
  return std::min({1.0, 1 / ab, ab / (16 * L3 * k), ab / (16 * k * k),
                   std::cbrt(ab) / std::cbrt(4 * L3 * L3 * k * k), std::sqrt(ab) / std::cbrt(16 * L3 * k * k)});
}

MomentConstants::MomentConstants(const SuperlinearAssumptions& a, const GrowthConstants& g,
                                 const Dissipativity& dis, double M1)
    : a_(a), K1_(g.K1), aD_(dis.aD), M1_(M1) {
  require(M1 > 0, "M1 must be positive");
  const double r = a.rho + a.q - 1, s = a.rho + a.q, bi = 1 / a.beta;
  kappa_ = std::exp(r * std::log(M1) - std::log1p(std::pow(M1, 3 * r)) / 3);
  const double Kh = a.K_h, KH = a.K_H, K3 = g.K3d;
  c1_ = L(2 * dis.bD + 4 * Kh * KH + bi * std::pow(2, s - 1) * K3 + 2 * Kh * Kh + 3 * KH * KH * Kh * Kh +
          6 * Kh * Kh * KH + std::pow(2, 2 * s - 6) * bi * bi * K3 * K3 + bi * Kh * K3 * std::pow(2, s) +
          bi * KH * Kh * K3 * std::pow(2, s - 1));
  c0_ = L(aD_ * kappa_ * M1 * M1) + c1_ + L(std::pow(2, 2 * s) * bi * a.d * (1 + K1_) * (1 + K1_));
}

LogValue MomentConstants::cXi(int p) const {
  require(p >= 1, "moment order must be >= 1");
  const double bi = 1 / a_.beta, d = a_.d;
  const LV inner = 1.0 + exp_of(p * (a_.rho + a_.q - 1) * std::log(2.0) + 0.5 * p * std::log(d)) * pow(L(K1_), p);
  return exp_of((2.0 * p - 4) * std::log(2.0)) * pow(L(bi * d), p) * pow(L(2.0 * p * (2 * p - 1)), p + 1) *
         pow(L(3), p - 1) * pow(inner, 2);
}

LogValue MomentConstants::M2(int p) const {
  const double s = a_.rho + a_.q, bi = 1 / a_.beta;
  return sqrt(exp_of((2 * (p + s) - 1) * std::log(2.0)) * L(p * (2.0 * p - 1) * bi * a_.d) *
              L((1 + K1_) * (1 + K1_)) / L(aD_ * kappa_));
}

LogValue MomentConstants::c(int p) const {
  require(p >= 2, "c_p is defined here for p >= 2");
  const double s = a_.rho + a_.q, bi = 1 / a_.beta, ak = aD_ * kappa_;
  const LV base = L(ak * M1_ * M1_) + c1_;
  const LV grow = L(1 + 2 / ak);
  const LV tail = pow(grow, p - 2) * pow(base, p - 1) + pow(M2(p), 2.0 * p - 2);
  return pow(grow, p - 1) * pow(base, p) + cXi(p) +
         exp_of((2 * (p + s) - 3) * std::log(2.0)) * L(p * (2.0 * p - 1) * bi * a_.d * (1 + K1_) * (1 + K1_)) *
             tail;
}

LogValue vp(double p, LogValue w) { return pow(1.0 + w * w, p / 2); }

LogValue DriftConstants::cV1(double p) const { return L(a * p / 4); }

LogValue DriftConstants::MV(double p) const {
  const double x = 1.0 / 3 + 4 * bbar / (3 * a) + 4 * d / (3 * a * beta) + 4 * (p - 2) / (3 * a * beta);
  require(x >= 0, "M_V(p) undefined for this order");
  return sqrt(L(x));
}

LogValue DriftConstants::cV2(double p) const { return L(0.75 * a * p) * vp(p, MV(p)); }

Contraction contraction(double Lc, LogValue cV1_2, LogValue cV2_2, double beta) {
  require(Lc > 0 && beta > 0, "contraction requires positive L and beta");
  Contraction c;
  c.cdot0 = 2.0 * sqrt(L(4) * cV2_2 * (1.0 + cV1_2) / cV1_2 - LV::one());
  c.cdot1 = 2.0 * sqrt(L(2) * cV2_2 / cV1_2 - LV::one());
  const double al = std::sqrt(beta * Lc / 8), ga = std::sqrt(8 / (beta * Lc));
  const double c0 = c.cdot0.value(), c1 = c.cdot1.value();
  const double top = c0 * al + ga;
  c.phi_bar = exp_of(-(0.5 * std::log(8 * std::numbers::pi / (beta * Lc)) + c.cdot0.log() + top * top));

  // int_0^{c1} exp((s al + ga)^2) ds, rescaled by its value at the upper limit:
  // with T = al c1 + ga, it equals e^{T^2}/(2 T al) * int_0^{2T(T-ga)} exp(-v + v^2/(4T^2)) dv.
  const double T = al * c1 + ga;
  const double vmax = 2 * T * (T - ga);
  const double upper = std::min(vmax, 120.0);
  const double J = integrate([T](double v) { return std::exp(-v + v * v / (4 * T * T)); }, 0.0, upper, 1e-12);
  c.integral = exp_of(T * T - std::log(2 * T * al)) * L(J);
  if (T * T > kAstronomical)
    c.diagnostics.push_back({"astronomically_large",
                             "contraction integral exponent " + fmt_p(T * T) + " exceeds 700; evaluated in log space"});

  const LV denom = L(4) * cV2_2 * L(std::sqrt(2 * beta * std::numbers::pi / Lc)) * c.integral;
  c.epsilon = min(LV::one(), LV::one() / denom);
  c.cdot = min(min(c.phi_bar, cV1_2), L(4) * cV2_2 * c.epsilon * cV1_2) / 2.0;
  c.chat = 2.0 * (1.0 + c.cdot0) * exp_of(beta * Lc * c0 * c0 / 8 + 2 * c0) / c.epsilon;
  return c;
}

void ConstantsReport::add(const std::string& name, const std::string& group, LogValue v) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    rows[it->second] = {name, group, v};
    return;
  }
  index_[name] = rows.size();
  rows.push_back({name, group, v});
}

bool ConstantsReport::has(const std::string& name) const { return index_.count(name) > 0; }

LogValue ConstantsReport::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("constants report has no row " + name);
  return rows[it->second].value;
}

double ConstantsReport::step_bound() const {
  return get(regime == Regime::linear ? "lambda_max_linear" : "lambda_max").value();
}

std::string ConstantsReport::to_json() const {
  nlohmann::ordered_json j;
  j["regime"] = to_string(regime);
  j["d"] = d;
  j["beta"] = beta;
  j["rho"] = rho;
  j["q"] = q;
  nlohmann::ordered_json rowsj = nlohmann::ordered_json::object();
  for (const auto& r : rows) {
    nlohmann::ordered_json e;
    e["group"] = r.group;
    if (r.value.is_zero()) {
      e["value"] = 0.0;
      e["log10"] = nullptr;
    } else {
      if (r.value.representable())
        e["value"] = r.value.value();
      else
        e["value"] = nullptr;
      e["log10"] = r.value.log10();
    }
    rowsj[r.name] = e;
  }
  j["constants"] = rowsj;
  nlohmann::ordered_json diag = nlohmann::ordered_json::array();
  for (const auto& dg : diagnostics) diag.push_back({{"code", dg.code}, {"message", dg.message}});
  j["diagnostics"] = diag;
  return j.dump(2);
}

namespace {

void flag_large(ConstantsReport& rep) {
  std::vector<std::string> big;
  for (const auto& r : rep.rows)
    if (!r.value.is_zero() && std::abs(r.value.log()) > kAstronomical) big.push_back(r.name);
  if (big.empty()) return;
  std::string msg = "constants astronomically large (|ln| > 700): ";
  for (std::size_t i = 0; i < big.size(); ++i) msg += (i ? ", " : "") + big[i];
  rep.diagnostics.push_back({"astronomically_large", msg});
}

}  // namespace

ConstantsReport build_report(const SuperlinearAssumptions& a, double M1) {
  a.validate();
  ConstantsReport rep;
  rep.regime = Regime::superlinear;
  rep.d = a.d;
  rep.beta = a.beta;
  rep.q = a.q;
  rep.rho = a.rho;
  const double bi = 1 / a.beta, d = a.d, rho = a.rho, q = a.q;

  const auto g = growth_constants(a);
  rep.add("K0", "growth", L(g.K0));
  rep.add("K1", "growth", L(g.K1));
  rep.add("K2", "growth", L(g.K2));
  rep.add("K3d", "growth", L(g.K3d));
  const auto dis = dissipativity(a);
  rep.add("aD", "dissipativity", L(dis.aD));
  rep.add("bD", "dissipativity", L(dis.bD));
  rep.add("RD", "dissipativity", L(dis.RD));
  rep.add("bbarD", "dissipativity", L(dis.bbarD));
  const auto os = one_sided_lipschitz(a, g.K1);
  rep.add("LOS", "one_sided_lipschitz", L(os.LOS));
  rep.add("ROS", "one_sided_lipschitz", L(os.ROS));
  rep.add("lambda_max", "stepsize", L(lambda_max(a, dis)));

  const MomentConstants mc(a, g, dis, M1);
  const double ak = dis.aD * mc.kappa();
  const LV mom = 1.0 + LV::one() / L(ak);
  rep.add("kappa", "moments", L(mc.kappa()));
  rep.add("M1", "moments", L(M1));
  rep.add("c0", "moments", mc.c0());
  rep.add("c1", "moments", mc.c1());

  const int R1 = a.rho + 1;
  const double ps[3] = {2.0, 2 * q, 2 + 2 * q};
  std::set<int> orders = {2, 8 * R1, iceil(2.0) * R1};
  for (double p : ps) orders.insert(2 * iceil(p) * R1);
  for (int k : orders) {
    rep.add("c_p(" + std::to_string(k) + ")", "moments", mc.c(k));
    rep.add("cXi_p(" + std::to_string(k) + ")", "moments", mc.cXi(k));
    rep.add("M2_p(" + std::to_string(k) + ")", "moments", mc.M2(k));
  }

  const DriftConstants dc{dis.aD, dis.bbarD, d, a.beta};
  rep.add("cV1_p(2)", "drift", dc.cV1(2));
  rep.add("cV2_p(2)", "drift", dc.cV2(2));
  std::set<int> mv_orders = {2, 16 * R1, 2 * iceil(2.0) * R1};
  for (int k : mv_orders) rep.add("MV_p(" + std::to_string(k) + ")", "drift", dc.MV(k));

  auto CA0b = [&](double p) {
    const double k2 = 2 * p;
    return exp_of(k2 * std::log(5.0) + 4.0 * iceil(p) * R1 * std::log(2.0)) *
           (pow(L(a.K_h), k2) + pow(L(bi), k2) * pow(L(g.K3d), k2) + pow(L(a.K_H * a.K_h), k2) +
            pow(L(bi * (4 * p + 2) * (d + 4 * p)), p) * (1.0 + pow(L(a.K_H), k2)));
  };
  auto CA0t = [&](double p) { return CA0b(p) * (mc.c(2 * iceil(p) * R1) * mom + 1.0); };
  auto CA1b = [&](double p) {
    return exp_of((2 * p + iceil(p) * R1 - 1) * std::log(2.0)) * pow(L(a.K_h), 2 * p);
  };
  auto CA1t = [&](double p) {
    const int k = iceil(p) * R1;
    return CA1b(p) * (mc.c(k) * mom + 1.0) + exp_of(2 * p * std::log(2.0)) * pow(L(a.K_h), 2 * p) * 3.0 *
                                                vp(2 * k, dc.MV(2 * k)) +
           exp_of(2 * p * std::log(2.0)) * pow(L(2 * bi * (p + 1) * (d + 2 * p)), p);
  };
  for (double p : ps) {
    rep.add("C_A0_bar_p(" + fmt_p(p) + ")", "convergence", CA0b(p));
    rep.add("C_A0_tilde_p(" + fmt_p(p) + ")", "convergence", CA0t(p));
  }
  rep.add("C_A1_bar_p(2)", "convergence", CA1b(2));
  rep.add("C_A1_tilde_p(2)", "convergence", CA1t(2));

  const LV pre = exp_of(24.0 * R1 * std::log(3.0)) * pow(L(d), 3) * pow(L(1 + g.K0), 2) * pow(L(1 + a.K_h), 2) *
                 pow(L(1 + a.K_H), 4) * pow(L(1 + bi), 2) * pow(L(1 + a.L), 2) * pow(L(1 + g.K3d), 2);
  const LV CA2b = pre * (2.0 + max(max(CA0b(ps[0]), CA0b(ps[1])), max(CA1b(2), CA0b(ps[2]))));
  const LV c8 = mc.c(8 * R1);
  const LV v16 = vp(16 * R1, dc.MV(16 * R1));
  const LV CA2t = pre * (2.0 * c8 * mom + 2.0 * max(max(CA0t(ps[0]), CA0t(ps[1])), max(CA1t(2), CA0t(ps[2]))) +
                         1.0 + v16);
  rep.add("C_A2_bar", "convergence", CA2b);
  rep.add("C_A2_tilde", "convergence", CA2t);

  const LV E = 65.0 * exp_of(2 * os.LOS + 7);
  const LV sf0 = E * CA2b, sf1 = E * CA2t;

  const Contraction ct = contraction(os.LOS, dc.cV1(2), dc.cV2(2), a.beta);
  for (const auto& dg : ct.diagnostics) rep.diagnostics.push_back(dg);
  rep.add("cdot", "contraction", ct.cdot);
  rep.add("phi_bar", "contraction", ct.phi_bar);
  rep.add("epsilon", "contraction", ct.epsilon);
  rep.add("cdot0", "contraction", ct.cdot0);
  rep.add("cdot1", "contraction", ct.cdot1);
  rep.add("chat", "contraction", ct.chat);
  rep.add("contraction_integral", "contraction", ct.integral);

  const LV cd = ct.cdot, ch = ct.chat;
  const LV m = min(min(cd, L(ak)), L(dis.aD / 2));
  const double mv = m.value(), cdv = cd.value();
  const double two8 = std::pow(2.0, 8 * rho + 11), two4 = std::pow(2.0, 4 * rho + 5);
  const LV sf2 = ch * (1.0 + 4.0 / m) * exp_of(mv / 4) * (sf0 + two8);
  const LV sf3 = 2.0 * (ch / cd) * exp_of(cdv / 2) * (sf1 + 15.0 + two8 * (c8 * mom + 1.0) + 18.0 * v16);
  const LV sf4 = sqrt(ch) * (1.0 + 8.0 / m) * exp_of(mv / 8) * (std::sqrt(2.0) * sqrt(sf0) + two4);
  const LV sf5 = 4.0 * (sqrt(ch) / cd) * exp_of(cdv / 4) *
                 (std::sqrt(2.0) * sqrt(sf1) + 3 * std::sqrt(2.0) + two4 * sqrt(c8 * mom + 1.0) +
                  std::sqrt(6.0) * sqrt(v16));
  const LV piV2 = L(1 + 2 * (dis.bbarD + d / a.beta) / dis.aD);
  rep.add("sfC0", "convergence", sf0);
  rep.add("sfC1", "convergence", sf1);
  rep.add("sfC2", "convergence", sf2);
  rep.add("sfC3", "convergence", sf3);
  rep.add("sfC4", "convergence", sf4);
  rep.add("sfC5", "convergence", sf5);
  rep.add("pi_V2", "convergence", piV2);
  rep.add("C0", "convergence", m / 4.0);
  rep.add("C1", "convergence", exp_of(mv / 4) * (sqrt(sf0) + sf2 + ch * (3.0 + piV2)));
  rep.add("C2", "convergence", sqrt(sf1) + sf3);
  rep.add("C3", "convergence", m / 8.0);
  rep.add("C4", "convergence", exp_of(mv / 8) * (sqrt(sf0) + sf4 + sqrt(2.0 * ch) * sqrt(3.0 + piV2)));
  rep.add("C5", "convergence", sqrt(sf1) + sf5);
  flag_large(rep);
  return rep;
}

namespace {

struct LinearMoments {
  LinearAssumptions la;
  double Kb1;
  LV S, Mb1, cb0, cb1;

  LV cXi(int p) const {
    const double bi = 1 / la.beta;
    return exp_of((2.0 * p - 3) * std::log(2.0)) * L(p * (2.0 * p - 1)) *
           pow(L(2 * bi * la.d * p * (2.0 * p - 1) * (1 + la.Lbar3) * (1 + la.Lbar3)), p);
  }
  LV M2(int p) const {
    const double bi = 1 / la.beta;
    return sqrt(exp_of(2.0 * p * std::log(2.0)) *
                L(p * (2.0 * p - 1) * bi * la.d * (1 + la.Lbar3) * (1 + la.Lbar3) / la.abar));
  }
  // order 1 is the second-moment constant
  LV c(int p) const {
    if (p == 1) return cb0;
    require(p >= 1, "moment order must be >= 1");
    const double bi = 1 / la.beta;
    const LV base = cb1 + S * Mb1;
    const LV grow = L(1 + 2 / la.abar);
    return cXi(p) + pow(grow, p - 1) * pow(base, p) +
           exp_of((2.0 * p - 2) * std::log(2.0)) * L(p * (2.0 * p - 1) * bi * la.d * (1 + la.Lbar3) * (1 + la.Lbar3)) *
               (pow(grow, p - 2) * pow(base, p - 1) + pow(M2(p), 2.0 * p - 2));
  }
};

}  // namespace

ConstantsReport build_report(const LinearAssumptions& la) {
  la.validate();
  ConstantsReport rep;
  rep.regime = Regime::linear;
  rep.d = la.d;
  rep.beta = la.beta;
  rep.q = la.q;
  const double bi = 1 / la.beta, d = la.d, q = la.q;
  const double L1 = la.Lbar1, L2 = la.Lbar2, L3 = la.Lbar3, ab = la.abar, bb = la.bbar;

  const double Kb0 = std::max(L1, la.hess0_max);
  const double Kb1 = std::max(L3, la.h0_norm);
  rep.add("Kbar0", "growth", L(Kb0));
  rep.add("Kbar1", "growth", L(Kb1));
  rep.add("lambda_max_linear", "stepsize", L(lambda_max_linear(la, Kb1)));

  const double inner = L2 + L2 * Kb1 + L2 * L3 * Kb1 / 2;
  LinearMoments lm{la, Kb1, L(bi * d * inner), L(2 / (ab * la.beta) * d * inner), {}, {}};
  lm.cb1 = L(2 * bb + 2 * L3 * Kb1 + 2 * Kb1 * Kb1 + L3 * L3 * Kb1 * Kb1 / 2 + bi * bi * d * d * L2 * L2 / 4 +
             2 * L3 * Kb1 * Kb1 + bi * d * (L2 * Kb1 + L2 * L3 * Kb1 / 2));
  lm.cb0 = lm.S * lm.Mb1 + lm.cb1 + L(2 * bi * d * (1 + L3) * (1 + L3));
  rep.add("cbar0", "moments", lm.cb0);
  rep.add("cbar1", "moments", lm.cb1);
  rep.add("Mbar1", "moments", lm.Mb1);
  rep.add("cbar_p(2)", "moments", lm.c(2));
  rep.add("cbarXi_p(2)", "moments", lm.cXi(2));
  rep.add("Mbar2_p(2)", "moments", lm.M2(2));

  const DriftConstants dc{ab, bb, d, la.beta};
  rep.add("cbarV1_p(2)", "drift", dc.cV1(2));
  rep.add("cbarV2_p(2)", "drift", dc.cV2(2));
  rep.add("MbarV_p(2)", "drift", dc.MV(2));
  rep.add("MbarV_p(4)", "drift", dc.MV(4));

  const LV mom = 1.0 + LV::one() / L(ab);
  auto CS0b = [&](double p) {
    return exp_of(2 * p * std::log(10.0)) * (pow(L(Kb1), 2 * p) + pow(L(L3 * Kb1), 2 * p));
  };
  auto CS0t = [&](double p) {
    return CS0b(p) * (lm.c(iceil(p)) * mom + 1.0) +
           exp_of(2 * p * std::log(5.0)) *
               (pow(L(bi * d * L2), 2 * p) + pow(L(2 * bi * (p + 1) * (d + 2 * p)), p) * (1.0 + pow(L(L3), 2 * p)));
  };
  auto CS1b = [&](double p) { return exp_of(4.0 * iceil(p) * std::log(2.0)) * pow(L(1 + Kb1), 2 * p); };
  auto CS1t = [&](double p) {
    const int k = iceil(p);
    return CS1b(p) * (lm.c(k) * mom + 1.0) +
           exp_of(3.0 * k * std::log(2.0)) * pow(L(1 + Kb1), 2 * p) * 3.0 * vp(2 * k, dc.MV(2 * k)) +
           exp_of(2 * p * std::log(2.0)) * pow(L(2 * bi * (p + 1) * (d + 2 * p)), p);
  };
  const double ps[3] = {2.0, 2 * q, 1 + q};
  for (double p : ps) {
    rep.add("C_S0_bar_p(" + fmt_p(p) + ")", "convergence", CS0b(p));
    rep.add("C_S0_tilde_p(" + fmt_p(p) + ")", "convergence", CS0t(p));
  }
  rep.add("C_S1_bar_p(2)", "convergence", CS1b(2));
  rep.add("C_S1_tilde_p(2)", "convergence", CS1t(2));

  const LV pre = exp_of(7 * std::log(2.0)) * pow(L(d), 4) * pow(L(1 + bi), 2) * pow(L(1 + L3), 4) *
                 pow(L(1 + L2), 2) * pow(L(1 + L1), 2) * pow(L(1 + Kb1), 2) * pow(L(1 + Kb0), 2);
  const LV c2 = lm.c(2);
  const LV CS2b = pre * (1.0 + max(max(CS0b(ps[0]), CS0b(ps[1])), max(CS0b(ps[2]), CS1b(2))));
  const LV CS2t = pre * (c2 * mom + max(max(CS0t(ps[0]), CS0t(ps[1])), max(CS0t(ps[2]), CS1t(2))) + 1.0);
  rep.add("C_S2_bar", "convergence", CS2b);
  rep.add("C_S2_tilde", "convergence", CS2t);
  const LV E = 52.0 * exp_of(2 * L3 + 6);
  const LV sf0 = E * CS2b, sf1 = E * CS2t;

  const Contraction ct = contraction(L3, dc.cV1(2), dc.cV2(2), la.beta);
  for (const auto& dg : ct.diagnostics) rep.diagnostics.push_back(dg);
  rep.add("cdot_Lin", "contraction", ct.cdot);
  rep.add("phi_bar_Lin", "contraction", ct.phi_bar);
  rep.add("epsilon_bar", "contraction", ct.epsilon);
  rep.add("cdot_Lin0", "contraction", ct.cdot0);
  rep.add("cdot_Lin1", "contraction", ct.cdot1);
  rep.add("chat_Lin", "contraction", ct.chat);
  rep.add("contraction_integral_Lin", "contraction", ct.integral);

  const LV cd = ct.cdot, ch = ct.chat;
  const LV m = min(cd, L(ab / 2));
  const double mv = m.value(), cdv = cd.value();
  const LV v4 = vp(4, dc.MV(4));
  const LV sf2 = ch * (1.0 + 4.0 / m) * exp_of(mv / 4) * (sf0 + 9.0);
  const LV sf3 = 2.0 * (ch / cd) * exp_of(cdv / 2) * (sf1 + 9.0 + 9.0 * c2 * mom + 9.0 * v4);
  const LV sf4 = sqrt(ch) * (1.0 + 8.0 / m) * exp_of(mv / 8) * (sqrt(sf0) + 3.0);
  const LV sf5 = 4.0 * (sqrt(ch) / cd) * exp_of(cdv / 4) *
                 (sqrt(sf1) + 1.0 + 3.0 * sqrt(c2 * mom + 1.0) + std::sqrt(3.0) * sqrt(v4));
  const LV piV2 = L(1 + 2 * (bb + d / la.beta) / ab);
  rep.add("sfC_Lin0", "convergence", sf0);
  rep.add("sfC_Lin1", "convergence", sf1);
  rep.add("sfC_Lin2", "convergence", sf2);
  rep.add("sfC_Lin3", "convergence", sf3);
  rep.add("sfC_Lin4", "convergence", sf4);
  rep.add("sfC_Lin5", "convergence", sf5);
  rep.add("pi_V2", "convergence", piV2);
  rep.add("C_Lin0", "convergence", m / 4.0);
  rep.add("C_Lin1", "convergence", exp_of(mv / 4) * (sqrt(sf0) + sf2 + ch * (3.0 + piV2)));
  rep.add("C_Lin2", "convergence", sqrt(sf1) + sf3);
  rep.add("C_Lin3", "convergence", m / 8.0);
  rep.add("C_Lin4", "convergence", exp_of(mv / 8) * (sqrt(sf0) + sf4 + sqrt(2.0 * ch) * sqrt(3.0 + piV2)));
  rep.add("C_Lin5", "convergence", sqrt(sf1) + sf5);
  flag_large(rep);
  return rep;
}

const std::vector<std::string>& superlinear_row_names() {
  static const std::vector<std::string> names = {
      "K0",         "K1",           "K2",          "K3d",          "aD",           "bD",
      "RD",         "bbarD",        "LOS",         "ROS",          "lambda_max",   "C0",
      "C1",         "C2",           "C3",          "C4",           "C5",           "sfC0",
      "sfC1",       "sfC2",         "sfC3",        "sfC4",         "sfC5",         "kappa",
      "c0",         "c1",           "c_p(2)",      "cXi_p(2)",     "M2_p(2)",      "cV1_p(2)",
      "cV2_p(2)",   "MV_p(2)",      "C_A2_bar",    "C_A2_tilde",   "C_A0_bar_p(2)", "C_A0_tilde_p(2)",
      "C_A1_bar_p(2)", "C_A1_tilde_p(2)", "cdot", "phi_bar",     "epsilon",      "cdot0",
      "cdot1",      "chat",         "pi_V2"};
  return names;
}

const std::vector<std::string>& linear_row_names() {
  static const std::vector<std::string> names = {
      "Kbar0",          "Kbar1",           "lambda_max_linear", "C_Lin0",        "C_Lin1",
      "C_Lin2",         "C_Lin3",          "C_Lin4",            "C_Lin5",        "sfC_Lin0",
      "sfC_Lin1",       "sfC_Lin2",        "sfC_Lin3",          "sfC_Lin4",      "sfC_Lin5",
      "cbar0",          "cbar1",           "Mbar1",             "cbar_p(2)",     "cbarXi_p(2)",
      "Mbar2_p(2)",     "cbarV1_p(2)",     "cbarV2_p(2)",       "MbarV_p(2)",    "C_S2_bar",
      "C_S2_tilde",     "C_S0_bar_p(2)",   "C_S0_tilde_p(2)",   "C_S1_bar_p(2)", "C_S1_tilde_p(2)",
      "cdot_Lin",       "phi_bar_Lin",     "epsilon_bar",       "cdot_Lin0",     "cdot_Lin1",
      "chat_Lin",       "pi_V2"};
  return names;
}

}  // namespace holmc
