#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace holmc {

// Nonnegative real stored as its natural logarithm; -inf encodes zero.
class LogValue {
 public:
  LogValue() : lg_(-std::numeric_limits<double>::infinity()) {}

  static LogValue of(double x) {
    if (!(x >= 0.0)) throw std::domain_error("LogValue requires a nonnegative value");
    LogValue v;
    v.lg_ = std::log(x);
    return v;
  }
  static LogValue from_log(double lg) {
    if (std::isnan(lg)) throw std::domain_error("LogValue from NaN log");
    LogValue v;
    v.lg_ = lg;
    return v;
  }
  static LogValue zero() { return LogValue(); }
  static LogValue one() { return from_log(0.0); }

  double log() const { return lg_; }
  double log10() const { return lg_ / std::log(10.0); }
  double value() const { return std::exp(lg_); }
  bool is_zero() const { return std::isinf(lg_) && lg_ < 0; }
  // exp(log) fits in a double without overflow
  bool representable() const { return lg_ < std::log(std::numeric_limits<double>::max()); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log(a.lg_ + b.lg_);
  }
  friend LogValue operator/(LogValue a, LogValue b) {
    if (b.is_zero()) throw std::domain_error("LogValue division by zero");
    if (a.is_zero()) return zero();
    return from_log(a.lg_ - b.lg_);
  }
  friend LogValue operator+(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.lg_, b.lg_), lo = std::min(a.lg_, b.lg_);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }
  // a - b for a >= b
  friend LogValue operator-(LogValue a, LogValue b) {
    if (b.is_zero()) return a;
    if (b.lg_ > a.lg_) throw std::domain_error("LogValue subtraction would go negative");
    if (b.lg_ == a.lg_) return zero();
    return from_log(a.lg_ + std::log1p(-std::exp(b.lg_ - a.lg_)));
  }
  friend LogValue operator*(LogValue a, double b) { return a * of(b); }
  friend LogValue operator*(double a, LogValue b) { return of(a) * b; }
  friend LogValue operator+(LogValue a, double b) { return a + of(b); }
  friend LogValue operator+(double a, LogValue b) { return of(a) + b; }
  friend LogValue operator/(LogValue a, double b) { return a / of(b); }
  friend LogValue operator/(double a, LogValue b) { return of(a) / b; }

  friend bool operator<(LogValue a, LogValue b) { return a.lg_ < b.lg_; }
  friend bool operator>(LogValue a, LogValue b) { return a.lg_ > b.lg_; }
  friend bool operator<=(LogValue a, LogValue b) { return a.lg_ <= b.lg_; }
  friend bool operator>=(LogValue a, LogValue b) { return a.lg_ >= b.lg_; }

 private:
  double lg_;
};

inline LogValue pow(LogValue a, double p) {
  if (p == 0.0) return LogValue::one();
  if (a.is_zero()) return p > 0 ? LogValue::zero() : throw std::domain_error("0 to a negative power");
  return LogValue::from_log(a.log() * p);
}
inline LogValue sqrt(LogValue a) { return pow(a, 0.5); }
// exp of the (finite) value a
inline LogValue exp(LogValue a) { return LogValue::from_log(a.value()); }
inline LogValue exp_of(double x) { return LogValue::from_log(x); }
inline LogValue max(LogValue a, LogValue b) { return a < b ? b : a; }
inline LogValue min(LogValue a, LogValue b) { return a < b ? a : b; }

}  // namespace holmc
