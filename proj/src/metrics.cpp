#include "holmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "holmc/quadrature.hpp"

namespace holmc {

std::string to_string(MarginalKind k) {
  switch (k) {
    case MarginalKind::gaussian: return "gaussian";
    case MarginalKind::mixture: return "mixture";
    case MarginalKind::doublewell: return "doublewell";
  }
  return "?";
}

double Marginal1D::quantile(double p) const {
  if (!(p > 0 && p < 1)) throw std::invalid_argument("quantile level must lie in (0, 1)");
  auto [lo, hi] = support();
  while (cdf(lo) > p) lo -= (hi - lo);
  while (cdf(hi) < p) hi += (hi - lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

class GaussianMarginal final : public Marginal1D {
 public:
  MarginalKind kind() const override { return MarginalKind::gaussian; }
  double pdf(double x) const override { return phi(x); }
  double cdf(double x) const override { return Phi(x); }
  std::pair<double, double> support() const override { return {-8.0, 8.0}; }
};

class MixtureMarginal final : public Marginal1D {
 public:
  explicit MixtureMarginal(double a1) : a_(a1) {}
  MarginalKind kind() const override { return MarginalKind::mixture; }
  double pdf(double x) const override { return 0.5 * (phi(x - a_) + phi(x + a_)); }
  double cdf(double x) const override { return 0.5 * (Phi(x - a_) + Phi(x + a_)); }
  std::pair<double, double> support() const override {
    const double w = 8.0 + std::abs(a_);
    return {-w, w};
  }

 private:
  double a_;
};

// log of y^k exp(-(y^2+t2)^2/4 + (y^2+t2)/2)
double log_kernel(double y, double t2, double k) {
  const double s = y * y + t2;
  const double ly = k == 0 ? 0.0 : (y > 0 ? k * std::log(y) : -INFINITY);
  return ly - 0.25 * s * s + 0.5 * s;
}

// log of int_0^inf y^k exp(-(y^2+t2)^2/4 + (y^2+t2)/2) dy
double log_radial_integral(double t2, double k) {
  const double b = t2 - 1.0;
  const double u = std::max(0.0, 0.5 * (-b + std::sqrt(b * b + 4.0 * k)));
  const double ys = std::sqrt(u);
  const double peak = log_kernel(ys, t2, k);
  auto f = [&](double y) { return std::exp(log_kernel(y, t2, k) - peak); };
  constexpr double cut = -45.0;
  double s = std::max(0.02, 0.05 * ys);
  double hi = ys + s;
  while (log_kernel(hi, t2, k) - peak > cut) {
    s *= 1.6;
    hi = ys + s;
  }
  double lo = 0.0;
  if (ys > 0) {
    s = std::max(0.02, 0.05 * ys);
    while (true) {
      const double y = ys - s;
      if (y <= 0) break;
      if (log_kernel(y, t2, k) - peak < cut) {
        lo = y;
        break;
      }
      s *= 1.6;
    }
  }
  double total = integrate(f, ys, hi, 1e-13);
  if (ys > lo) total += integrate(f, lo, ys, 1e-13);
  return peak + std::log(total);
}

class DoubleWellMarginal final : public Marginal1D {
 public:
  explicit DoubleWellMarginal(int d) : d_(d) {
    if (d < 2) throw std::invalid_argument("double-well marginal needs d >= 2");
    lpref_ = std::lgamma(0.5 * d) - 0.5 * std::log(std::numbers::pi) - std::lgamma(0.5 * (d - 1));
    lden_ = log_radial_integral(0.0, d - 1.0);
    build_table();
  }
  MarginalKind kind() const override { return MarginalKind::doublewell; }
  double pdf(double x) const override {
    return std::exp(lpref_ + log_radial_integral(x * x, d_ - 2.0) - lden_);
  }
  double cdf(double x) const override {
    if (x <= a_) return 0.0;
    if (x >= b_) return 1.0;
    const double pos = (x - a_) / h_;
    const auto i = std::min(static_cast<std::size_t>(pos), F_.size() - 2);
    const double t = pos - static_cast<double>(i);
    // cubic Hermite with the density as slope
    const double t2 = t * t, t3 = t2 * t;
    const double v = (2 * t3 - 3 * t2 + 1) * F_[i] + (t3 - 2 * t2 + t) * h_ * p_[i] + (-2 * t3 + 3 * t2) * F_[i + 1] +
                     (t3 - t2) * h_ * p_[i + 1];
    return std::clamp(v, 0.0, 1.0);
  }
  std::pair<double, double> support() const override { return {-4.0, 4.0}; }
  double denominator_log() const { return lden_; }

 private:
  void build_table() {
    constexpr int panels = 4000;
    a_ = -5.0;
    b_ = 5.0;
    h_ = (b_ - a_) / panels;
    p_.resize(panels + 1);
    F_.assign(panels + 1, 0.0);
    for (int i = 0; i <= panels; ++i) p_[i] = pdf(a_ + i * h_);
    for (int i = 0; i < panels; ++i) {
      const double mid = pdf(a_ + (i + 0.5) * h_);
      F_[i + 1] = F_[i] + h_ / 6.0 * (p_[i] + 4 * mid + p_[i + 1]);
    }
    const double total = F_.back();
    for (double& f : F_) f /= total;
    for (double& p : p_) p /= total;
  }

  int d_;
  double lpref_, lden_;
  double a_ = 0, b_ = 0, h_ = 0;
  std::vector<double> p_, F_;
};

// Integral of |F_n - F| over merged breakpoints (pts sorted by x, xs sorted).
double abs_cdf_gap(const std::vector<std::pair<double, double>>& pts, const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  std::size_t s = 0;
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const double x0 = pts[j].first, x1 = pts[j + 1].first;
    while (s < xs.size() && xs[s] <= x0) ++s;
    const double w = x1 - x0;
    if (w <= 0) continue;
    const double c = static_cast<double>(s) / n;
    const double e0 = c - pts[j].second, e1 = c - pts[j + 1].second;
    if ((e0 >= 0) == (e1 >= 0)) {
      acc += 0.5 * w * (std::abs(e0) + std::abs(e1));
    } else {
      const double t = e0 / (e0 - e1);
      acc += 0.5 * w * (std::abs(e0) * t + std::abs(e1) * (1 - t));
    }
  }
  return acc;
}

}  // namespace

MarginalPtr gaussian_marginal() { return std::make_shared<GaussianMarginal>(); }
MarginalPtr mixture_marginal(double a1) { return std::make_shared<MixtureMarginal>(a1); }
MarginalPtr doublewell_marginal(int d) { return std::make_shared<DoubleWellMarginal>(d); }

MarginalPtr marginal_for(const std::string& potential, int d) {
  if (potential == "gaussian") return gaussian_marginal();
  if (potential == "mixture") return mixture_marginal(mixture_center(d)[0]);
  if (potential == "doublewell") return doublewell_marginal(d);
  throw std::invalid_argument("no reference marginal for potential " + potential);
}

double w1_empirical(std::vector<double> xs, std::vector<double> ys) {
  if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("w1_empirical needs equal nonempty samples");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double s = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) s += std::abs(xs[i] - ys[i]);
  return s / static_cast<double>(xs.size());
}

W1Evaluator::W1Evaluator(MarginalPtr m, std::size_t grid_points) : m_(std::move(m)) {
  if (grid_points < 2) throw std::invalid_argument("W1 grid needs at least two points");
  std::tie(lo_, hi_) = m_->support();
  h_ = (hi_ - lo_) / static_cast<double>(grid_points - 1);
  F_.resize(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) F_[i] = m_->cdf(lo_ + h_ * static_cast<double>(i));
}

double W1Evaluator::operator()(std::vector<double> xs) const {
  if (xs.empty()) throw std::invalid_argument("W1 needs at least one sample");
  for (double x : xs)
    if (!std::isfinite(x)) throw std::invalid_argument("W1 samples must be finite");
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> pts;
  pts.reserve(F_.size() + xs.size());
  std::size_t s = 0, g = 0;
  while (s < xs.size() || g < F_.size()) {
    const double xg = g < F_.size() ? lo_ + h_ * static_cast<double>(g) : INFINITY;
    if (s < xs.size() && xs[s] < xg) {
      pts.emplace_back(xs[s], m_->cdf(xs[s]));
      ++s;
    } else {
      pts.emplace_back(xg, F_[g]);
      ++g;
    }
  }
  return abs_cdf_gap(pts, xs);
}

double w1_vs_marginal(const std::vector<double>& xs, const Marginal1D& m) {
  const std::size_t grid = std::max<std::size_t>(4 * xs.size(), 8192);
  // non-owning handle; the evaluator does not outlive this call
  W1Evaluator ev(MarginalPtr(std::shared_ptr<const Marginal1D>{}, &m), grid);
  return ev(xs);
}

double mse(const std::vector<Vector>& estimates, const Vector& theta_star) {
  if (estimates.empty()) throw std::invalid_argument("mse needs at least one estimate");
  double s = 0;
  for (const auto& e : estimates) {
    if (e.size() != theta_star.size()) throw std::invalid_argument("mse dimension mismatch");
    s += (e - theta_star).squaredNorm();
  }
  return s / static_cast<double>(estimates.size());
}

double histogram_tv(const std::vector<double>& xs, const Marginal1D& m, int bins) {
  if (xs.empty() || bins < 1) throw std::invalid_argument("histogram needs samples and bins");
  const auto [lo, hi] = m.support();
  const double w = (hi - lo) / bins;
  std::vector<double> count(bins, 0.0);
  for (double x : xs) {
    const int b = static_cast<int>(std::floor((x - lo) / w));
    if (b >= 0 && b < bins) count[b] += 1.0;
  }
  double tv = 0;
  for (int b = 0; b < bins; ++b) {
    const double mass = m.cdf(lo + (b + 1) * w) - m.cdf(lo + b * w);
    tv += std::abs(count[b] / static_cast<double>(xs.size()) - mass);
  }
  return 0.5 * tv;
}

void write_density_grid_csv(const Marginal1D& m, const std::string& path, int points) {
  if (points < 2) throw std::invalid_argument("density grid needs at least two points");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.precision(17);
  const auto [lo, hi] = m.support();
  out << "x,pdf\n";
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    out << x << ',' << m.pdf(x) << '\n';
  }
}

}  // namespace holmc
