#ifndef GAPDIM_SEQUENCE_HPP
#define GAPDIM_SEQUENCE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gapdim/errors.hpp"
#include "gapdim/log_value.hpp"

namespace gapdim {

enum class SequenceFamily {
  kPowerLaw,         // tail n^(1-p), term = tail(n) - tail(n+1)
  kDyadicGeometric,  // constant gap per dyadic block, ratio tau
  kDyadicSchedule,   // per-block ratios from a cyclic run-length schedule
  kExplicit,         // listed terms, optional geometric tail
};

struct ScheduleEntry {
  double tau = 0.0;
  uint32_t run_length = 1;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

// Finite-window diagnostics for the standing hypotheses. Report-only: the
// caller decides what counts as a violation.
struct HypothesisReport {
  double inf_ratio = 0.0;          // min scale(n)/scale(n+1) over the window
  double sup_ratio = 0.0;          // max of the same ratio
  double nth_root_start = 0.0;     // (scale(lo)/scale(lo+1))^(1/lo)
  double nth_root_trend = 0.0;     // (scale(hi)/scale(hi+1))^(1/hi)
  double doubling_constant = 0.0;  // max term(n)/term(2n) over the window
  uint32_t window_lo = 0;
  uint32_t window_hi = 0;
};

// Dense table of per-level scale data, for windowed limit diagnostics.
// scale_log[i] is log s of level k_lo+i where s(k) = 2^-k * x(2^k);
// strictly decreasing. block_mean_log[i] is the log of the mean gap over
// dyadic block k_lo+i, so s(k) = mean(k) + 2 s(k+1) holds level by level.
struct ScaleTable {
  uint32_t k_lo = 0;
  uint32_t k_hi = 0;
  std::vector<double> tail_log;        // log x_{2^k}
  std::vector<double> scale_log;       // log s_k
  std::vector<double> block_mean_log;  // log r_k
};

// A positive, non-increasing gap sequence with total sum 1. Terms are exact
// closed forms in linear doubles; tails and per-level scales are also
// available in log space because they decay below double range long before
// the index range of interest runs out.
//
// Dyadic block convention: block k >= 0 covers indices 2^k <= n < 2^(k+1).
// All methods are pure and safe for concurrent use; there are no caches.
class SequenceModel {
 public:
  static SequenceModel power_law(double p) {
    if (!(p > 1.0) || !(p < 1024.0))
      throw ValidationError("power_law: exponent p must lie in (1, 1024)");
    SequenceModel m;
    m.family_ = SequenceFamily::kPowerLaw;
    m.p_ = p;
    return m;
  }

  static SequenceModel dyadic_geometric(double tau) {
    validate_tau(tau, 0);
    SequenceModel m;
    m.family_ = SequenceFamily::kDyadicGeometric;
    m.tau_ = tau;
    return m;
  }

  static SequenceModel dyadic_schedule(std::vector<ScheduleEntry> entries) {
    if (entries.empty())
      throw ValidationError("dyadic_schedule: schedule must be non-empty");
    uint64_t blocks = 0;
    for (const auto& e : entries) {
      validate_tau(e.tau, blocks);
      if (e.run_length < 1)
        throw ValidationError("dyadic_schedule: run_length must be >= 1");
      blocks += e.run_length;
    }
    if (blocks > 1u << 20)
      throw ValidationError("dyadic_schedule: cycle exceeds 2^20 blocks");
    SequenceModel m;
    m.family_ = SequenceFamily::kDyadicSchedule;
    m.entries_ = std::move(entries);
    m.init_schedule();
    m.validate_schedule_monotone();
    return m;
  }

  // terms: a_1..a_N. tail_ratio q in (0,1) extends with a_{N+i} = a_N q^i;
  // q = 0 means no tail (indices beyond N are then out of range).
  // Unless normalize is set, the total mass must already be 1 within 1e-12.
  static SequenceModel explicit_finite(std::vector<double> terms,
                                       double tail_ratio, bool normalize) {
    if (terms.empty())
      throw ValidationError("explicit_finite: need at least one term");
    if (!(tail_ratio >= 0.0) || tail_ratio >= 1.0)
      throw ValidationError("explicit_finite: tail_ratio must lie in [0, 1)");
    for (size_t i = 0; i < terms.size(); ++i) {
      if (!(terms[i] > 0.0))
        throw ValidationError("explicit_finite: term " + std::to_string(i + 1) +
                              " is not positive");
      if (i > 0 && terms[i] > terms[i - 1])
        throw ValidationError(
            "explicit_finite: non-increasing violated at index " +
            std::to_string(i + 1));
    }
    SequenceModel m;
    m.family_ = SequenceFamily::kExplicit;
    m.terms_ = std::move(terms);
    m.tail_ratio_ = tail_ratio;
    m.normalize_ = normalize;
    m.init_explicit();
    if (!normalize && std::abs(m.sum_raw_ - 1.0) > 1e-12)
      throw ValidationError("explicit_finite: total mass " +
                            std::to_string(m.sum_raw_) +
                            " differs from 1 (pass normalize to rescale)");
    return m;
  }

  SequenceFamily family() const { return family_; }
  double power_exponent() const { return p_; }
  double geometric_ratio() const { return tau_; }
  const std::vector<ScheduleEntry>& schedule() const { return entries_; }
  const std::vector<double>& explicit_terms() const { return terms_; }
  double explicit_tail_ratio() const { return tail_ratio_; }
  bool normalize_requested() const { return normalize_; }

  friend bool operator==(const SequenceModel&, const SequenceModel&) = default;

  // Largest index usable with term(); tail() additionally allows max_index+1.
  uint64_t max_index() const {
    if (family_ == SequenceFamily::kExplicit && tail_ratio_ == 0.0)
      return terms_.size();
    return uint64_t{1} << 62;
  }

  // Largest block level k for which log-space level data is meaningful.
  uint32_t max_pow2_level() const {
    if (family_ == SequenceFamily::kExplicit) {
      if (tail_ratio_ > 0.0) return 61;
      return static_cast<uint32_t>(std::bit_width(terms_.size())) - 1;
    }
    return 1u << 20;
  }

  // a_n, exact closed form.
  double term(uint64_t n) const {
    check_index(n, max_index());
    switch (family_) {
      case SequenceFamily::kPowerLaw:
        if (p_ == 2.0) return 1.0 / (static_cast<double>(n) * (n + 1));
        // Cancellation in the tail difference costs about n/(p-1) ulps;
        // beyond 2^12 the log-space form is the accurate one.
        if (n < (1u << 12)) return tail_value(n) - tail_value(n + 1);
        return std::exp(term_log(n));
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule:
        return gap_value(block_of(n));
      case SequenceFamily::kExplicit:
        if (n <= terms_.size()) return terms_[n - 1] / sum_raw_;
        return terms_.back() *
               std::pow(tail_ratio_, static_cast<double>(n - terms_.size())) /
               sum_raw_;
    }
    return 0.0;
  }

  // log a_n.
  double term_log(uint64_t n) const {
    check_index(n, max_index());
    switch (family_) {
      case SequenceFamily::kPowerLaw: {
        // a_n = n^(1-p) (1 - (1+1/n)^(1-p))
        double ln_n = std::log(static_cast<double>(n));
        return (1.0 - p_) * ln_n +
               log1m_exp((1.0 - p_) * std::log1p(1.0 / static_cast<double>(n)));
      }
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule:
        return gap_log(block_of(n));
      case SequenceFamily::kExplicit:
        if (n <= terms_.size()) return std::log(terms_[n - 1] / sum_raw_);
        return std::log(terms_.back() / sum_raw_) +
               static_cast<double>(n - terms_.size()) * std::log(tail_ratio_);
    }
    return 0.0;
  }

  // log a_{2^k}; valid for k beyond the uint64 index range.
  double term_log_pow2(uint32_t k) const {
    check_level(k);
    switch (family_) {
      case SequenceFamily::kPowerLaw: {
        double u = std::ldexp(1.0, -static_cast<int>(k));  // 1/n
        if (u > 0.0)
          return (1.0 - p_) * (k * std::numbers::ln2) +
                 log1m_exp((1.0 - p_) * std::log1p(u));
        // 1/n underflows: a_n = (p-1) n^-p to beyond double precision.
        return std::log(p_ - 1.0) - p_ * (k * std::numbers::ln2);
      }
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule:
        return gap_log(k);
      case SequenceFamily::kExplicit:
        return term_log(uint64_t{1} << k);
    }
    return 0.0;
  }

  // x_n = sum of a_i for i >= n, linear space. Index n = max_index()+1 is
  // allowed so that the residual after the last term is observable.
  double tail_value(uint64_t n) const {
    check_index(n, max_index() + 1);
    switch (family_) {
      case SequenceFamily::kPowerLaw:
        if (p_ == 2.0) return 1.0 / static_cast<double>(n);
        return std::pow(static_cast<double>(n), 1.0 - p_);
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule: {
        uint32_t k = block_of(n);
        // Within a block the tail is affine: all gaps equal gap_value(k).
        double x_next = dyadic_tail_value(k + 1);
        uint64_t m = (uint64_t{2} << k) - n;
        return x_next + static_cast<double>(m) * gap_value(k);
      }
      case SequenceFamily::kExplicit:
        if (n <= terms_.size() + 1) return suffix_[n] / sum_raw_;
        return suffix_[terms_.size() + 1] *
               std::pow(tail_ratio_,
                        static_cast<double>(n - terms_.size() - 1)) /
               sum_raw_;
    }
    return 0.0;
  }

  LogValue tail(uint64_t n) const { return LogValue::from_log(tail_log(n)); }

  // log x_n.
  double tail_log(uint64_t n) const {
    check_index(n, max_index() + 1);
    switch (family_) {
      case SequenceFamily::kPowerLaw:
        return (1.0 - p_) * std::log(static_cast<double>(n));
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule: {
        uint32_t k = block_of(n);
        uint64_t m = (uint64_t{2} << k) - n;
        if (m == 0) return tail_log_pow2(k + 1);
        LogValue x_next = LogValue::from_log(tail_log_pow2(k + 1));
        LogValue rest =
            LogValue::from_log(std::log(static_cast<double>(m)) + gap_log(k));
        return x_next.add(rest).lg;
      }
      case SequenceFamily::kExplicit:
        if (n <= terms_.size() + 1) return std::log(tail_value(n));
        return std::log(suffix_[terms_.size() + 1] / sum_raw_) +
               static_cast<double>(n - terms_.size() - 1) * std::log(tail_ratio_);
    }
    return 0.0;
  }

  // log x_{2^k}.
  double tail_log_pow2(uint32_t k) const {
    check_level(k);
    switch (family_) {
      case SequenceFamily::kPowerLaw:
        return (1.0 - p_) * (k * std::numbers::ln2);
      case SequenceFamily::kDyadicGeometric:
        // x_{2^k} = (2 tau)^k
        return k * (std::numbers::ln2 + std::log(tau_));
      case SequenceFamily::kDyadicSchedule:
        return k * std::numbers::ln2 + schedule_scale_log(k);
      case SequenceFamily::kExplicit:
        return tail_log(uint64_t{1} << k);
    }
    return 0.0;
  }

  // log x at index 2^k (1 + rho), rho in [0, 1). Supports indices beyond the
  // uint64 range; rho must be exactly representable (dyadic offsets are).
  double tail_log_pow2_offset(uint32_t k, double rho) const {
    if (!(rho >= 0.0) || rho >= 1.0)
      throw ValidationError("tail_log_pow2_offset: rho must lie in [0, 1)");
    if (rho == 0.0) return tail_log_pow2(k);
    check_level(k);
    switch (family_) {
      case SequenceFamily::kPowerLaw:
        return (1.0 - p_) * (k * std::numbers::ln2 + std::log1p(rho));
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule: {
        // Index lies inside block k: x = 2^k (2 s_{k+1} + (1 - rho) g_k).
        LogValue a = LogValue::from_log(std::numbers::ln2 + scale_log(k + 1));
        LogValue b = LogValue::from_log(std::log1p(-rho) + gap_log(k));
        return k * std::numbers::ln2 + a.add(b).lg;
      }
      case SequenceFamily::kExplicit:
        throw ValidationError(
            "tail_log_pow2_offset: not supported for explicit sequences");
    }
    return 0.0;
  }

  // log s_k where s_k = 2^-k x_{2^k}; strictly decreasing in k.
  double scale_log(uint32_t k) const {
    check_level(k);
    switch (family_) {
      case SequenceFamily::kPowerLaw:
        return -p_ * (k * std::numbers::ln2);
      case SequenceFamily::kDyadicGeometric:
        return k * std::log(tau_);
      case SequenceFamily::kDyadicSchedule:
        return schedule_scale_log(k);
      case SequenceFamily::kExplicit:
        return tail_log_pow2(k) - k * std::numbers::ln2;
    }
    return 0.0;
  }

  LogValue scale(uint32_t k) const { return LogValue::from_log(scale_log(k)); }

  // log r_k where r_k = 2^-k (x_{2^k} - x_{2^(k+1)}), the mean gap of block
  // k. For block families this is the gap itself.
  double block_mean_log(uint32_t k) const {
    check_level(k);
    switch (family_) {
      case SequenceFamily::kDyadicGeometric:
      case SequenceFamily::kDyadicSchedule:
        return gap_log(k);
      case SequenceFamily::kPowerLaw:
      case SequenceFamily::kExplicit: {
        LogValue x0 = LogValue::from_log(tail_log_pow2(k));
        LogValue x1 = LogValue::from_log(tail_log_pow2(k + 1));
        return x0.sub(x1).lg - k * std::numbers::ln2;
      }
    }
    return 0.0;
  }

  ScaleTable scale_table(uint32_t k_lo, uint32_t k_hi) const {
    if (k_hi < k_lo) throw ValidationError("scale_table: empty level range");
    ScaleTable t;
    t.k_lo = k_lo;
    t.k_hi = k_hi;
    t.tail_log.reserve(k_hi - k_lo + 1);
    for (uint32_t k = k_lo; k <= k_hi; ++k) {
      t.tail_log.push_back(tail_log_pow2(k));
      t.scale_log.push_back(scale_log(k));
      t.block_mean_log.push_back(block_mean_log(k));
    }
    return t;
  }

  // Scale-ratio extremes and the doubling constant over level window
  // [lo, hi]. The nth-root fields track whether (s_n/s_{n+1})^(1/n)
  // settles toward 1, the admissibility condition the selectors rely on.
  HypothesisReport hypothesis_report(uint32_t lo, uint32_t hi) const {
    if (hi < lo || lo < 1)
      throw ValidationError("hypothesis_report: window must satisfy 1 <= lo <= hi");
    HypothesisReport rep;
    rep.window_lo = lo;
    rep.window_hi = hi;
    double lo_ratio = std::numeric_limits<double>::infinity();
    double hi_ratio = 0.0;
    for (uint32_t k = lo; k <= hi; ++k) {
      double r = std::exp(scale_log(k) - scale_log(k + 1));
      lo_ratio = std::min(lo_ratio, r);
      hi_ratio = std::max(hi_ratio, r);
    }
    rep.inf_ratio = lo_ratio;
    rep.sup_ratio = hi_ratio;
    rep.nth_root_start =
        std::exp((scale_log(lo) - scale_log(lo + 1)) / static_cast<double>(lo));
    rep.nth_root_trend =
        std::exp((scale_log(hi) - scale_log(hi + 1)) / static_cast<double>(hi));
    double c = 0.0;
    for (uint64_t n = lo; n <= hi; ++n)
      c = std::max(c, std::exp(term_log(n) - term_log(2 * n)));
    rep.doubling_constant = c;
    return rep;
  }

  static uint32_t block_of(uint64_t n) {
    return static_cast<uint32_t>(std::bit_width(n)) - 1;
  }

  // Gap length of block k (block-constant families only).
  double gap_value(uint32_t k) const {
    if (family_ == SequenceFamily::kDyadicGeometric)
      return (1.0 - 2.0 * tau_) * std::pow(tau_, static_cast<double>(k));
    return (1.0 - 2.0 * tau_at_block(k)) * std::exp(schedule_scale_log(k));
  }

  double gap_log(uint32_t k) const {
    if (family_ == SequenceFamily::kDyadicGeometric)
      return std::log1p(-2.0 * tau_) + k * std::log(tau_);
    return std::log1p(-2.0 * tau_at_block(k)) + schedule_scale_log(k);
  }

  double tau_at_block(uint32_t k) const {
    uint64_t r = k % cycle_blocks_;
    for (const auto& e : entries_) {
      if (r < e.run_length) return e.tau;
      r -= e.run_length;
    }
    return entries_.back().tau;  // unreachable
  }

 private:
  SequenceModel() = default;

  static void validate_tau(double tau, uint64_t block) {
    if (!(tau > 0.0) || !(tau < 0.5) || 1.0 - 2.0 * tau <= 1e-12)
      throw ValidationError("block ratio tau at schedule position " +
                            std::to_string(block) +
                            " must lie strictly inside (0, 1/2)");
  }

  void check_index(uint64_t n, uint64_t limit) const {
    if (n < 1) throw ValidationError("sequence index must be >= 1");
    if (n > limit)
      throw ValidationError("sequence index " + std::to_string(n) +
                            " beyond representable range " +
                            std::to_string(limit));
  }

  void check_level(uint32_t k) const {
    if (k > max_pow2_level() + 1)
      throw ValidationError("block level " + std::to_string(k) +
                            " beyond representable range");
  }

  double dyadic_tail_value(uint32_t k) const {
    if (family_ == SequenceFamily::kDyadicGeometric)
      return std::pow(2.0 * tau_, static_cast<double>(k));
    return std::exp(tail_log_pow2(k));
  }

  void init_schedule() {
    cycle_blocks_ = 0;
    cycle_log_ = 0.0;
    pref_log_.clear();
    for (const auto& e : entries_) {
      pref_log_.push_back(cycle_log_);
      cycle_blocks_ += e.run_length;
      cycle_log_ += e.run_length * std::log(e.tau);
    }
  }

  // log s_k for schedules: full cycles contribute cycle_log_ each, the
  // remainder is a prefix of one cycle.
  double schedule_scale_log(uint32_t k) const {
    uint64_t q = k / cycle_blocks_;
    uint64_t r = k % cycle_blocks_;
    double acc = static_cast<double>(q) * cycle_log_;
    for (size_t i = 0; i < entries_.size(); ++i) {
      if (r < entries_[i].run_length) {
        return acc + pref_log_[i] + static_cast<double>(r) * std::log(entries_[i].tau);
      }
      r -= entries_[i].run_length;
    }
    return acc + cycle_log_;  // unreachable
  }

  // Gaps are constant within a block, so monotonicity can only fail at a
  // block boundary: need tau_k (1 - 2 tau_{k+1}) <= 1 - 2 tau_k. The tau
  // pattern repeats with the cycle, so two cycles plus the wrap pair cover
  // every distinct adjacent pair.
  void validate_schedule_monotone() const {
    uint64_t span = 2 * cycle_blocks_ + 1;
    for (uint64_t k = 0; k < span; ++k) {
      double t0 = tau_at_block(static_cast<uint32_t>(k));
      double t1 = tau_at_block(static_cast<uint32_t>(k + 1));
      if (t0 * (1.0 - 2.0 * t1) > (1.0 - 2.0 * t0) * (1.0 + 1e-15)) {
        std::string at = k < 62 ? "index " + std::to_string(uint64_t{2} << k)
                                : "block " + std::to_string(k + 1);
        throw ValidationError(
            "dyadic_schedule: non-increasing violated at " + at + " (block " +
            std::to_string(k + 1) + " gap exceeds block " + std::to_string(k) +
            ")");
      }
    }
  }

  void init_explicit() {
    size_t n = terms_.size();
    suffix_.assign(n + 2, 0.0);
    if (tail_ratio_ > 0.0)
      suffix_[n + 1] = terms_.back() * tail_ratio_ / (1.0 - tail_ratio_);
    for (size_t i = n; i >= 1; --i) suffix_[i] = suffix_[i + 1] + terms_[i - 1];
    sum_raw_ = suffix_[1];
  }

  SequenceFamily family_ = SequenceFamily::kPowerLaw;
  double p_ = 2.0;
  double tau_ = 0.0;
  std::vector<ScheduleEntry> entries_;
  std::vector<double> terms_;
  double tail_ratio_ = 0.0;
  bool normalize_ = false;

  // derived, value-semantic (participate in ==)
  uint64_t cycle_blocks_ = 1;
  double cycle_log_ = 0.0;
  std::vector<double> pref_log_;
  std::vector<double> suffix_;
  double sum_raw_ = 1.0;
};

}  // namespace gapdim

#endif  // GAPDIM_SEQUENCE_HPP
