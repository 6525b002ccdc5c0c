#pragma once

// Target-dimension construction. The gap sequence is split into a
// dyadic-block subsequence b, driving a Cantor-type core of total mass r
// placed on [0, r], and the leftover non-increasing sequence a', driving a
// countable accumulation part on [r, 1]. The union realizes a prescribed
// intermediate dimension sitting between the countable-side and Cantor-side
// endpoints, and its gap lengths stay a sub-multiset of the source terms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gapdim/builders.hpp"
#include "gapdim/dimensions.hpp"
#include "gapdim/errors.hpp"
#include "gapdim/interval_set.hpp"
#include "gapdim/sequence.hpp"

namespace gapdim {

// one consumed run of source terms: indices [start, start + count)
struct IndexRange {
  uint64_t start = 0;
  uint64_t count = 0;
};

struct ConstructionPlan {
  SequenceModel model;
  double theta = 0.0;
  double target = 0.0;
  double s_exponent = 0.0;        // upper_cantor / target, always > 1
  double upper_cantor = 0.0;      // Cantor-side endpoint at this theta
  double upper_countable = 0.0;   // countable-side endpoint at this theta
  std::vector<uint32_t> j_map;    // j_map[0] = 0, then bracketing indices
  std::vector<IndexRange> blocks;  // blocks[k]: the 2^k source terms of level k
  std::vector<double> block_mass;  // mass of each consumed block
  std::vector<double> suffix_mass;  // suffix_mass[k] = sum of block_mass[k..]
  double split_r = 0.0;             // Cantor-part mass, = suffix_mass[0]
  std::string note;  // feasibility remark when the target does not exceed
                     // the countable-side endpoint; empty otherwise

  // gap value of Cantor level k, in-level index i
  double level_gap(uint32_t k, uint64_t i) const {
    return model.term(blocks[k].start + i);
  }
};

namespace construct_detail {

inline constexpr uint32_t kMaxJ = 62;         // source index 2^(j+1) must fit
inline constexpr uint32_t kScanGuard = 4000;  // total j-scan budget
inline constexpr uint32_t kMaxLevels = 60;
inline constexpr double kMassCutoff = 1e-300;
// node masses truncate at the planned levels; with scale ratios above 2 each
// extra level shrinks the tail by half, so 20 spare levels keep truncation
// far below double noise
inline constexpr uint32_t kLevelMargin = 20;

}  // namespace construct_detail

inline ConstructionPlan plan_construction(const SequenceModel& seq,
                                          double theta, double t) {
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw ValidationError("plan_construction: theta must lie in (0, 1]");
  if (!std::isfinite(t))
    throw ValidationError("plan_construction: target must be finite");

  uint64_t max_level = seq.max_pow2_level();
  if (max_level < 66)
    throw ValidationError(
        "plan_construction: sequence resolves too few dyadic levels to check "
        "the scale-ratio hypothesis");
  HypothesisReport hyp = seq.hypothesis_report(
      1, static_cast<uint32_t>(std::min<uint64_t>(64, max_level - 1)));
  if (!(hyp.inf_ratio > 2.0) || !std::isfinite(hyp.sup_ratio))
    throw ValidationError(
        "plan_construction: scale-ratio hypothesis fails: ratios must stay "
        "in (2, inf), observed [" + std::to_string(hyp.inf_ratio) + ", " +
        std::to_string(hyp.sup_ratio) + "]");

  ConstructionPlan plan{.model = seq, .theta = theta, .target = t};
  plan.upper_cantor = interm_cantor_upper(seq, theta).value;
  plan.upper_countable = interm_countable(seq, theta).upper.value;
  if (!(t > 0.0) || !(t < plan.upper_cantor))
    throw InfeasibleError(
        "plan_construction: target " + std::to_string(t) +
        " is outside the attainable range (0, " +
        std::to_string(plan.upper_cantor) + ")");
  if (t <= plan.upper_countable)
    plan.note =
        "target does not exceed the countable-side endpoint " +
        std::to_string(plan.upper_countable) +
        "; the countable part dominates at this target";
  plan.s_exponent = plan.upper_cantor / t;

  const double s = plan.s_exponent;
  plan.j_map.push_back(0);
  plan.blocks.push_back({2, 1});  // level 0 carries the single gap b_1 = a_2
  plan.block_mass.push_back(seq.term(2));

  uint32_t scanned = 0;
  uint32_t jcap = construct_detail::kMaxJ;
  if (seq.max_index() < (uint64_t{1} << 62))
    jcap = std::min<uint32_t>(
        jcap, static_cast<uint32_t>(std::bit_width(seq.max_index())) - 2);
  for (uint32_t k = 1; k <= construct_detail::kMaxLevels; ++k) {
    // largest j with a_{2^j} >= (a_{2^k})^s, scanned upward in log space;
    // the target shrinks with k, so j never moves left
    double target_log = s * seq.term_log(uint64_t{1} << k);
    uint32_t j = std::max(plan.j_map.back(), k);
    if (j > jcap) break;
    if (seq.term_log(uint64_t{1} << j) < target_log)
      throw PrecisionError("plan_construction: internal: bracket start lost");
    while (j < jcap && seq.term_log(uint64_t{1} << (j + 1)) >= target_log) {
      ++j;
      if (++scanned > construct_detail::kScanGuard)
        throw PrecisionError(
            "plan_construction: bracketing scan exceeded its budget");
    }
    if (j >= jcap) break;  // bracket may extend past representable indices

    // run length of equal j values ending here selects the block offset
    uint32_t m = 0;
    while (m + 1 < k && plan.j_map[k - (m + 1)] == j) ++m;
    uint64_t off = 0;
    for (uint32_t r = 1; r <= m; ++r) off += uint64_t{1} << (k - r);
    uint64_t start = (uint64_t{1} << (j + 1)) + off;
    uint64_t count = uint64_t{1} << k;
    if (start + count - 1 > seq.max_index()) break;
    double mass = seq.tail_value(start) - seq.tail_value(start + count);
    if (!(mass > construct_detail::kMassCutoff)) break;
    if (start < plan.blocks.back().start + plan.blocks.back().count)
      throw PrecisionError("plan_construction: internal: blocks overlap");

    plan.j_map.push_back(j);
    plan.blocks.push_back({start, count});
    plan.block_mass.push_back(mass);
  }
  if (plan.blocks.size() < 4)
    throw PrecisionError(
        "plan_construction: exponent " + std::to_string(s) +
        " leaves fewer than four plannable levels");

  // summed smallest-first so the split point carries full precision
  plan.suffix_mass.assign(plan.blocks.size() + 1, 0.0);
  for (size_t k = plan.blocks.size(); k-- > 0;)
    plan.suffix_mass[k] = plan.block_mass[k] + plan.suffix_mass[k + 1];
  plan.split_r = plan.suffix_mass[0];
  if (!(plan.split_r > 0.0) || !(plan.split_r < 1.0))
    throw PrecisionError("plan_construction: Cantor-part mass " +
                         std::to_string(plan.split_r) +
                         " escaped (0, 1)");
  return plan;
}

// Union of the Cantor-type core on [0, r] (depth K) and the countable part
// on [r, 1] (M isolated points plus a solid residual accumulating at r).
// The two parts touch at r and the touching pair is merged into one
// component, since structure below the residual bound is unresolved anyway.
inline IntervalSet build_mixed(const ConstructionPlan& plan, uint32_t K,
                               uint64_t M) {
  const SequenceModel& seq = plan.model;
  const size_t levels = plan.blocks.size();
  if (K < 1 || K > 25)
    throw ValidationError("mixed depth must be in [1, 25], got " +
                          std::to_string(K));
  if (K + construct_detail::kLevelMargin > levels)
    throw PrecisionError(
        "mixed depth " + std::to_string(K) + " needs " +
        std::to_string(K + construct_detail::kLevelMargin) +
        " planned levels but the plan has " + std::to_string(levels) +
        "; lower the depth or bring the target closer to the Cantor endpoint");
  if (M < 1) throw ValidationError("mixed count must be >= 1");
  if (M > (uint64_t{1} << 26))
    throw ValidationError("mixed count exceeds 2^26");

  // mass strictly inside node (k, j): every planned level contributes one
  // contiguous run of source terms
  auto node_mass = [&](uint32_t k, uint64_t j) -> double {
    double sum = 0.0, comp_err = 0.0;
    for (size_t n = k; n < levels; ++n) {
      uint64_t width = uint64_t{1} << (n - k);
      uint64_t lo = plan.blocks[n].start + j * width;
      double part = seq.tail_value(lo) - seq.tail_value(lo + width);
      double y = part - comp_err;
      double tt = sum + y;
      comp_err = (tt - sum) - y;
      sum = tt;
    }
    return sum;
  };

  const uint64_t leaves = uint64_t{1} << K;
  const double split = plan.split_r;
  std::vector<Component> comps;
  comps.reserve(leaves + M + 1);
  struct Node {
    uint32_t k;
    uint64_t j;
    double left, len;
  };
  std::vector<Node> stack;
  stack.reserve(2 * K + 2);
  stack.push_back({0, 0, 0.0, split});
  double max_len = 0.0;
  double prev_right = -1.0;
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (nd.k == K) {
      if (!(nd.left > prev_right))
        throw PrecisionError("mixed depth " + std::to_string(K) +
                             ": component positions collide");
      prev_right = nd.left + nd.len;
      if (!(prev_right > nd.left))
        throw PrecisionError("mixed depth " + std::to_string(K) +
                             ": component narrower than position resolution");
      comps.push_back({nd.left, prev_right});
      if (nd.len > max_len) max_len = nd.len;
      continue;
    }
    double g = plan.level_gap(nd.k, nd.j);
    double len_left = node_mass(nd.k + 1, 2 * nd.j);
    // right length by subtraction keeps node mass additive exactly
    double len_right = nd.len - g - len_left;
    if (!(len_right > 0.0) || !(len_left > 0.0))
      throw PrecisionError("mixed depth " + std::to_string(K) +
                           ": subtree mass lost to rounding");
    double right_left = (nd.left + len_left) + g;
    stack.push_back({nd.k + 1, 2 * nd.j + 1, right_left, len_right});
    stack.push_back({nd.k + 1, 2 * nd.j, nd.left, len_left});
  }

  // leftover tails: walk source indices ascending, skipping consumed blocks;
  // the unconsumed tail from survivor u is tail(u) minus the mass of every
  // block at or beyond u
  std::vector<double> tails;
  tails.reserve(M + 1);
  uint64_t u = 1;
  size_t bf = 0;
  for (uint64_t k = 1; k <= M + 1; ++k) {
    while (bf < levels && u == plan.blocks[bf].start) {
      u += plan.blocks[bf].count;
      ++bf;
    }
    if (u > seq.max_index())
      throw ValidationError("mixed count exceeds the usable sequence range");
    tails.push_back(seq.tail_value(u) - plan.suffix_mass[bf]);
    ++u;
  }

  // first countable piece extends the last core component through r
  double resid_right = split + tails[M];
  if (!(resid_right > comps.back().right))
    throw PrecisionError("mixed build: countable residual collapsed");
  comps.back().right = resid_right;
  double merged_len = comps.back().length();
  prev_right = resid_right;
  for (uint64_t k = M; k >= 1; --k) {
    double y = split + tails[k - 1];
    if (k == 1 && std::abs(y - 1.0) <= 1e-12) y = 1.0;
    if (!(y > prev_right))
      throw PrecisionError("mixed point " + std::to_string(k) +
                           " collides with its neighbor");
    comps.push_back({y, y});
    prev_right = y;
  }
  if (!(prev_right <= 1.0))
    throw PrecisionError("mixed build escaped the unit interval");

  BuildInfo info{"mixed",
                 build_detail::flatten_spec(seq) + ";theta=" +
                     io_detail::format_real(plan.theta) + ";t=" +
                     io_detail::format_real(plan.target),
                 K, M};
  return IntervalSet(std::move(comps), std::max(max_len, merged_len),
                     std::move(info));
}

}  // namespace gapdim
