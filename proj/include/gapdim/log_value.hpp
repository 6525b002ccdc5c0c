#ifndef GAPDIM_LOG_VALUE_HPP
#define GAPDIM_LOG_VALUE_HPP

#include <cmath>
#include <limits>

namespace gapdim {

// Positive quantity stored as its natural log. Used for lengths and gap
// masses that underflow double range at deep levels (e.g. a term at index
// 2^400). Zero is representable as log = -inf.
struct LogValue {
  double lg = -std::numeric_limits<double>::infinity();

  static LogValue from_value(double v) { return LogValue{std::log(v)}; }
  static LogValue from_log(double l) { return LogValue{l}; }
  static LogValue zero() { return LogValue{}; }

  double value() const { return std::exp(lg); }
  bool is_zero() const { return std::isinf(lg) && lg < 0; }

  LogValue mul(LogValue o) const { return LogValue{lg + o.lg}; }
  LogValue div(LogValue o) const { return LogValue{lg - o.lg}; }
  LogValue pow(double e) const { return LogValue{lg * e}; }

  // log(e^a + e^b) without leaving log space.
  LogValue add(LogValue o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    double hi = lg, lo = o.lg;
    if (hi < lo) std::swap(hi, lo);
    return LogValue{hi + std::log1p(std::exp(lo - hi))};
  }

  // log(e^a - e^b); requires a >= b. Equal inputs give zero().
  LogValue sub(LogValue o) const {
    if (o.is_zero()) return *this;
    if (o.lg >= lg) return zero();
    // expm1 keeps the difference accurate when the two logs are close.
    return LogValue{lg + std::log(-std::expm1(o.lg - lg))};
  }

  friend bool operator<(LogValue a, LogValue b) { return a.lg < b.lg; }
  friend bool operator<=(LogValue a, LogValue b) { return a.lg <= b.lg; }
  friend bool operator>(LogValue a, LogValue b) { return a.lg > b.lg; }
  friend bool operator>=(LogValue a, LogValue b) { return a.lg >= b.lg; }
};

// log(1 - e^x) for x < 0, accurate for x near 0 and for very negative x.
inline double log1m_exp(double x) {
  // For x > -ln2 use log(-expm1(x)); otherwise log1p(-exp(x)).
  constexpr double kLn2 = 0.6931471805599453;
  return (x > -kLn2) ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

}  // namespace gapdim

#endif  // GAPDIM_LOG_VALUE_HPP
