#include "holmc/potential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace holmc {

std::string to_string(Regime r) { return r == Regime::linear ? "linear" : "superlinear"; }

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

namespace {

// sigma(t)(1-sigma(t))
double sig_var(double t) {
  const double e = std::exp(-std::abs(t));
  return e / ((1.0 + e) * (1.0 + e));
}

// derivative of sig_var: sigma(1-sigma)(1-2 sigma)
double sig_skew(double t) { return -sig_var(t) * std::tanh(0.5 * t); }

class Gaussian final : public PotentialModel {
 public:
  explicit Gaussian(int d) : d_(d) {}
  std::string name() const override { return "gaussian"; }
  int dimension() const override { return d_; }
  Regime regime() const override { return Regime::linear; }
  double value(const Vector& th) const override {
    check_dim(th);
    return 0.5 * th.squaredNorm();
  }
  Vector gradient(const Vector& th) const override {
    check_dim(th);
    return th;
  }
  Vector hvp(const Vector& th, const Vector& v) const override {
    check_dim(th);
    return v;
  }
  Vector upsilon(const Vector& th) const override {
    check_dim(th);
    return Vector::Zero(d_);
  }

 private:
  int d_;
};

class Mixture final : public PotentialModel {
 public:
  explicit Mixture(Vector a) : a_(std::move(a)), a2_(a_.squaredNorm()) {}
  std::string name() const override { return "mixture"; }
  int dimension() const override { return static_cast<int>(a_.size()); }
  Regime regime() const override { return Regime::linear; }
  double value(const Vector& th) const override {
    check_dim(th);
    return 0.5 * (th - a_).squaredNorm() - softplus(-2.0 * th.dot(a_));
  }
  Vector gradient(const Vector& th) const override {
    check_dim(th);
    const double u = 2.0 * th.dot(a_);
    return th - a_ + 2.0 * sigmoid(-u) * a_;
  }
  Vector hvp(const Vector& th, const Vector& v) const override {
    check_dim(th);
    const double u = 2.0 * th.dot(a_);
    return v - 4.0 * sig_var(u) * a_.dot(v) * a_;
  }
  Vector upsilon(const Vector& th) const override {
    check_dim(th);
    const double u = 2.0 * th.dot(a_);
    return -8.0 * a2_ * sig_skew(u) * a_;
  }

 private:
  Vector a_;
  double a2_;
};

class DoubleWell final : public PotentialModel {
 public:
  explicit DoubleWell(int d) : d_(d) {}
  std::string name() const override { return "doublewell"; }
  int dimension() const override { return d_; }
  Regime regime() const override { return Regime::superlinear; }
  double value(const Vector& th) const override {
    check_dim(th);
    const double r2 = th.squaredNorm();
    return 0.25 * r2 * r2 - 0.5 * r2;
  }
  Vector gradient(const Vector& th) const override {
    check_dim(th);
    return (th.squaredNorm() - 1.0) * th;
  }
  Vector hvp(const Vector& th, const Vector& v) const override {
    check_dim(th);
    return (th.squaredNorm() - 1.0) * v + 2.0 * th.dot(v) * th;
  }
  Vector upsilon(const Vector& th) const override {
    check_dim(th);
    return (2.0 * d_ + 4.0) * th;
  }

 private:
  int d_;
};

class Logistic final : public PotentialModel {
 public:
  explicit Logistic(LogisticDataset data) : data_(std::move(data)) {
    const int n = data_.count();
    offset_ = Vector::Zero(data_.dimension());
    for (int i = 0; i < n; ++i)
      if (data_.y[i] == 0) offset_ += data_.z.row(i).transpose();
    row_norm2_ = data_.z.rowwise().squaredNorm();
  }
  std::string name() const override { return "logistic"; }
  int dimension() const override { return data_.dimension(); }
  Regime regime() const override { return Regime::linear; }
  double value(const Vector& th) const override {
    check_dim(th);
    const Vector t = data_.z * th;
    double s = 0.5 * th.squaredNorm() + offset_.dot(th);
    for (Eigen::Index i = 0; i < t.size(); ++i) s += softplus(-t[i]);
    return s;
  }
  Vector gradient(const Vector& th) const override {
    check_dim(th);
    Vector t = data_.z * th;
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = sigmoid(-t[i]);
    return th + offset_ - data_.z.transpose() * t;
  }
  Vector hvp(const Vector& th, const Vector& v) const override {
    check_dim(th);
    const Vector t = data_.z * th;
    Vector w = data_.z * v;
    for (Eigen::Index i = 0; i < t.size(); ++i) w[i] *= sig_var(t[i]);
    return v + data_.z.transpose() * w;
  }
  Vector upsilon(const Vector& th) const override {
    check_dim(th);
    Vector t = data_.z * th;
    for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = row_norm2_[i] * sig_skew(t[i]);
    return data_.z.transpose() * t;
  }

 private:
  LogisticDataset data_;
  Vector offset_;
  Vector row_norm2_;
};

}  // namespace

void PotentialModel::check_dim(const Vector& theta) const {
  if (theta.size() != dimension()) {
    std::ostringstream os;
    os << name() << ": expected dimension " << dimension() << ", got " << theta.size();
    throw std::invalid_argument(os.str());
  }
}

Matrix PotentialModel::dense_hessian(const Vector& theta) const {
  const int d = dimension();
  if (d > 16) throw std::invalid_argument("dense_hessian is limited to d <= 16");
  Matrix h(d, d);
  for (int j = 0; j < d; ++j) h.col(j) = hvp(theta, Vector::Unit(d, j));
  return h;
}

ModelPtr make_gaussian(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::make_shared<Gaussian>(d);
}

ModelPtr make_gaussian_mixture(const Vector& a_hat) {
  if (a_hat.size() < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(a_hat.norm() > 1.0)) throw std::invalid_argument("mixture centre must satisfy |a_hat| > 1");
  return std::make_shared<Mixture>(a_hat);
}

Vector mixture_center(int d, double norm) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return Vector::Constant(d, norm / std::sqrt(static_cast<double>(d)));
}

ModelPtr make_double_well(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  return std::make_shared<DoubleWell>(d);
}

ModelPtr make_logistic(LogisticDataset data) {
  data.validate();
  return std::make_shared<Logistic>(std::move(data));
}

}  // namespace holmc
