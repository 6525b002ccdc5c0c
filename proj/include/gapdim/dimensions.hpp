#pragma once

// Dimension formulas driven by sequence scale data: box and Hausdorff
// values from tail ratios, the Assouad pair from two-scale ratios, scale
// selectors and the intermediate values they produce, plus the closed-form
// countable-set interpolation and the general homogeneity bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gapdim/dimension_report.hpp"
#include "gapdim/errors.hpp"
#include "gapdim/sequence.hpp"

namespace gapdim {

struct IndexWindow {
  uint64_t lo = 0;
  uint64_t hi = 0;
};

inline constexpr IndexWindow kDefaultBoxWindow{2, uint64_t{1} << 20};
inline constexpr IndexWindow kDefaultAssouadN{1, 64};
inline constexpr IndexWindow kDefaultAssouadK{0, 192};
inline constexpr IndexWindow kDefaultIntermN{2, 64};

struct BoxDims {
  DimensionReport lower;         // liminf log n / (log n - log x_n)
  DimensionReport upper;         // limsup of the same values
  DimensionReport a_form_lower;  // liminf log n / (-log a_n), can be smaller
};

struct AssouadPair {
  DimensionReport assouad;        // limsup_n sup_k of the two-scale ratio
  DimensionReport assouad_lower;  // liminf_n inf_k
};

struct SelectorPair {
  uint64_t gamma = 0;  // last level still at or above the theta-power scale
  uint64_t rho = 0;    // largest minimizer of s_m^{1/m} up to gamma+1
};

struct IntermCountable {
  DimensionReport upper;
  DimensionReport lower;
};

struct ThetaRange {
  double lower_countable = 0.0;  // attainable lower values start here
  double lower_cantor = 0.0;     // and end at the Hausdorff value
  double upper_countable = 0.0;  // attainable upper values start here
  double upper_cantor = 0.0;     // and end at the Cantor upper value
};

namespace dim_detail {

inline constexpr double kLn2 = std::numbers::ln2;

inline std::vector<uint64_t> sample_indices(uint64_t lo, uint64_t hi) {
  std::vector<uint64_t> idx;
  if (hi - lo < 320) {
    for (uint64_t n = lo; n <= hi; ++n) idx.push_back(n);
    return idx;
  }
  constexpr int kGeo = 257;
  double llo = std::log(static_cast<double>(lo));
  double lhi = std::log(static_cast<double>(hi));
  for (int i = 0; i < kGeo; ++i) {
    double t = llo + (lhi - llo) * i / (kGeo - 1);
    auto n = static_cast<uint64_t>(std::llround(std::exp(t)));
    idx.push_back(std::clamp(n, lo, hi));
  }
  for (uint64_t p2 = 1; p2 <= hi && p2 != 0; p2 <<= 1)
    if (p2 >= lo) idx.push_back(p2);
  idx.push_back(lo);
  idx.push_back(hi);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

inline IndexWindow checked_box_window(const SequenceModel& seq,
                                      IndexWindow w) {
  w.hi = std::min(w.hi, seq.max_index());
  if (w.lo < 2 || w.lo >= w.hi)
    throw ValidationError("box window must satisfy 2 <= lo < hi within the "
                          "sequence index range");
  return w;
}

}  // namespace dim_detail

// Lower/upper box values from tail ratios plus the term-form lower bound.
// The two lower reports can genuinely differ; both are returned so the
// strictness is observable.
inline BoxDims box_dims(const SequenceModel& seq,
                        IndexWindow w = kDefaultBoxWindow) {
  w = dim_detail::checked_box_window(seq, w);
  std::vector<uint64_t> idx = dim_detail::sample_indices(w.lo, w.hi);
  std::vector<double> tail_form, term_form;
  tail_form.reserve(idx.size());
  term_form.reserve(idx.size());
  for (uint64_t n : idx) {
    double ln_n = std::log(static_cast<double>(n));
    tail_form.push_back(ln_n / (ln_n - seq.tail_log(n)));
    term_form.push_back(ln_n / -seq.term_log(n));
  }
  using report_detail::summarize_window;
  BoxDims out;
  out.lower = summarize_window(DimensionKind::kBoxLower, LimitMode::kLimInf,
                               idx, tail_form, w.lo, w.hi);
  out.upper = summarize_window(DimensionKind::kBoxUpper, LimitMode::kLimSup,
                               idx, tail_form, w.lo, w.hi);
  out.a_form_lower =
      summarize_window(DimensionKind::kBoxLowerAForm, LimitMode::kLimInf,
                       std::move(idx), std::move(term_form), w.lo, w.hi);
  return out;
}

// Same window values as the box pair, packaged as the Hausdorff value of
// the Cantor-side set (the two coincide for these sets).
inline DimensionReport hausdorff_cantor(const SequenceModel& seq,
                                        IndexWindow w = kDefaultBoxWindow) {
  BoxDims box = box_dims(seq, w);
  DimensionReport rep = std::move(box.lower);
  rep.kind = DimensionKind::kHausdorffCantor;
  return rep;
}

// Assouad and lower Assouad from two-scale ratios: inner sup/inf over the
// level offset k, outer limsup/liminf over the gap count n. k_window is
// clamped so k + n stays within representable levels.
inline AssouadPair assouad_pair(const SequenceModel& seq,
                                IndexWindow n_w = kDefaultAssouadN,
                                IndexWindow k_w = kDefaultAssouadK) {
  if (n_w.lo < 1 || n_w.hi < n_w.lo)
    throw ValidationError("assouad n window must satisfy 1 <= lo <= hi");
  if (k_w.hi < k_w.lo)
    throw ValidationError("assouad k window must satisfy lo <= hi");
  uint64_t max_level = seq.max_pow2_level();
  if (n_w.hi + 1 > max_level)
    throw ValidationError("assouad n window exceeds representable levels");
  k_w.hi = std::min(k_w.hi, max_level - n_w.hi);
  if (k_w.hi < k_w.lo)
    throw ValidationError("assouad k window exceeds representable levels");

  ScaleTable table = seq.scale_table(static_cast<uint32_t>(k_w.lo),
                                     static_cast<uint32_t>(k_w.hi + n_w.hi));
  auto s_log = [&](uint64_t k) { return table.scale_log[k - k_w.lo]; };

  std::vector<uint64_t> idx;
  std::vector<double> sup_vals, inf_vals;
  for (uint64_t n = n_w.lo; n <= n_w.hi; ++n) {
    double best_sup = 0.0;
    double best_inf = 1.0;
    for (uint64_t k = k_w.lo; k <= k_w.hi; ++k) {
      double v = (static_cast<double>(n) * dim_detail::kLn2) /
                 (s_log(k) - s_log(k + n));
      best_sup = std::max(best_sup, v);
      best_inf = std::min(best_inf, v);
    }
    idx.push_back(n);
    sup_vals.push_back(best_sup);
    inf_vals.push_back(best_inf);
  }
  using report_detail::summarize_window;
  AssouadPair out;
  out.assouad = summarize_window(DimensionKind::kAssouad, LimitMode::kLimSup,
                                 idx, sup_vals, n_w.lo, n_w.hi);
  out.assouad_lower =
      summarize_window(DimensionKind::kAssouadLower, LimitMode::kLimInf,
                       std::move(idx), std::move(inf_vals), n_w.lo, n_w.hi);
  return out;
}

// gamma: largest level m with s_m >= s_r^{1/theta} (monotone bracket in
// log space). rho: the largest index minimizing s_m^{1/m} over [r, gamma+1];
// ties within 1e-14 of the minimum resolve to the largest index.
inline SelectorPair selectors(const SequenceModel& seq, double theta,
                              uint64_t r) {
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw ValidationError("selectors: theta must lie in (0, 1]");
  if (r < 1) throw ValidationError("selectors: r must be >= 1");
  uint64_t max_level = seq.max_pow2_level();
  if (r + 1 > max_level)
    throw PrecisionError("selectors: r exceeds representable levels");

  double target = seq.scale_log(static_cast<uint32_t>(r)) / theta;
  uint64_t gamma = r;
  while (true) {
    if (gamma + 1 > max_level)
      throw PrecisionError(
          "selectors: level window exhausted before bracketing gamma");
    if (seq.scale_log(static_cast<uint32_t>(gamma + 1)) >= target)
      ++gamma;
    else
      break;
  }

  double q_min = std::numeric_limits<double>::infinity();
  for (uint64_t m = r; m <= gamma + 1; ++m)
    q_min = std::min(q_min, seq.scale_log(static_cast<uint32_t>(m)) /
                                static_cast<double>(m));
  uint64_t rho = r;
  for (uint64_t m = r; m <= gamma + 1; ++m) {
    double q = seq.scale_log(static_cast<uint32_t>(m)) / static_cast<double>(m);
    if (q <= q_min + 1e-14) rho = m;
  }
  return {gamma, rho};
}

// Upper intermediate value of the Cantor-side set: limsup over n of
// -rho(n) log2 / log s_{rho(n)}.
inline DimensionReport interm_cantor_upper(const SequenceModel& seq,
                                           double theta,
                                           IndexWindow n_w = kDefaultIntermN) {
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw ValidationError("interm_cantor_upper: theta must lie in (0, 1]");
  if (n_w.lo < 1 || n_w.hi < n_w.lo)
    throw ValidationError("interm window must satisfy 1 <= lo <= hi");

  std::string caveat;
  uint64_t max_level = seq.max_pow2_level();
  if (max_level >= 66) {
    HypothesisReport hyp = seq.hypothesis_report(
        1, static_cast<uint32_t>(std::min<uint64_t>(64, max_level - 1)));
    if (std::abs(hyp.nth_root_trend - 1.0) > 0.05)
      caveat = "scale ratio nth root trend not settled";
  } else {
    caveat = "hypothesis window unavailable at this level range";
  }

  std::vector<uint64_t> idx;
  std::vector<double> vals;
  for (uint64_t n = n_w.lo; n <= n_w.hi; ++n) {
    SelectorPair sel = selectors(seq, theta, n);
    double s_rho = seq.scale_log(static_cast<uint32_t>(sel.rho));
    idx.push_back(n);
    vals.push_back(-(static_cast<double>(sel.rho) * dim_detail::kLn2) / s_rho);
  }
  return report_detail::summarize_window(DimensionKind::kIntermCantorUpper,
                                         LimitMode::kLimSup, std::move(idx),
                                         std::move(vals), n_w.lo, n_w.hi,
                                         std::move(caveat));
}

namespace dim_detail {

// theta-interpolation closed form for countable accumulation sets
inline double countable_form(double box_value, double theta) {
  if (box_value >= 1.0 - 1e-12) return 1.0;
  return theta * box_value / (1.0 - (1.0 - theta) * box_value);
}

}  // namespace dim_detail

// Upper and lower intermediate values of the countable-side set: closed-form
// substitution of the box values; monotone, so window data maps through.
inline IntermCountable interm_countable(const SequenceModel& seq, double theta,
                                        IndexWindow w = kDefaultBoxWindow) {
  if (!(theta >= 0.0) || !(theta <= 1.0))
    throw ValidationError("interm_countable: theta must lie in [0, 1]");
  BoxDims box = box_dims(seq, w);
  auto mapped = [&](const DimensionReport& src, DimensionKind kind,
                    LimitMode mode) {
    std::vector<double> vals;
    vals.reserve(src.window_values.size());
    for (double b : src.window_values)
      vals.push_back(dim_detail::countable_form(b, theta));
    return report_detail::summarize_window(kind, mode, src.window_indices,
                                           std::move(vals), src.window_lo,
                                           src.window_hi);
  };
  IntermCountable out;
  out.upper = mapped(box.upper, DimensionKind::kIntermCountableUpper,
                     LimitMode::kLimSup);
  out.lower = mapped(box.lower, DimensionKind::kIntermCountableLower,
                     LimitMode::kLimInf);
  return out;
}

// Interpolation bound between lower Assouad and Assouad dimensions for a
// set with the given upper box value; requires genuine inhomogeneity.
inline double banaji_bound(double dim_assouad, double dim_assouad_lower,
                           double box_upper, double theta) {
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw ValidationError("banaji_bound: theta must lie in (0, 1]");
  if (!(dim_assouad_lower >= 0.0) || !(dim_assouad <= 1.0) ||
      !(dim_assouad_lower < dim_assouad))
    throw ValidationError(
        "banaji_bound: requires 0 <= lower Assouad < Assouad <= 1");
  if (!(box_upper >= dim_assouad_lower) || !(box_upper <= dim_assouad))
    throw ValidationError(
        "banaji_bound: box value must lie between the Assouad pair");
  double up = box_upper - dim_assouad_lower;
  double down = dim_assouad - box_upper;
  return (theta * dim_assouad * up + dim_assouad_lower * down) /
         (theta * up + down);
}

// Attainable value ranges at a given theta: countable-side endpoint to the
// Cantor-side endpoint, for lower and upper intermediate dimensions.
inline ThetaRange range_for_theta(const SequenceModel& seq, double theta,
                                  IndexWindow box_w = kDefaultBoxWindow,
                                  IndexWindow interm_w = kDefaultIntermN) {
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw ValidationError("range_for_theta: theta must lie in (0, 1]");
  IntermCountable countable = interm_countable(seq, theta, box_w);
  ThetaRange out;
  out.lower_countable = countable.lower.value;
  out.lower_cantor = hausdorff_cantor(seq, box_w).value;
  out.upper_countable = countable.upper.value;
  out.upper_cantor = interm_cantor_upper(seq, theta, interm_w).value;
  return out;
}

}  // namespace gapdim
