#pragma once

// Geometric realizations of complementary sets. Positions are forced:
// the interval at each node has length equal to the analytic mass of the
// gap subtree below it, so placement never accumulates summation drift.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gapdim/errors.hpp"
#include "gapdim/interval_set.hpp"
#include "gapdim/sequence.hpp"
#include "gapdim/sequence_io.hpp"

namespace gapdim {

namespace build_detail {

inline constexpr double kLn2 = 0.69314718055994530942;

// one-line spec for dump headers
inline std::string flatten_spec(const SequenceModel& seq) {
  std::string s = serialize_sequence_spec(seq);
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    if (c == '\n')
      out += "; ";
    else
      out += c;
  }
  return out;
}

// Mass of the gap subtree below node (k, j), 0-based j among 2^k nodes:
// sum of a_{2^m + j 2^{m-k} + i} over m >= k, 0 <= i < 2^{m-k}.
inline double subtree_mass(const SequenceModel& seq, uint32_t k, uint64_t j) {
  switch (seq.family()) {
    case SequenceFamily::kDyadicGeometric:
    case SequenceFamily::kDyadicSchedule:
      // equal terms within each block make every depth-k subtree carry s_k
      return std::exp(seq.scale_log(k));
    case SequenceFamily::kPowerLaw: {
      // closed form [ (1+u)^{1-p} - (1+u+h)^{1-p} ] 2^{k(1-p)} / (1-2^{1-p})
      // with u = j/2^k, h = 2^{-k}; factored through expm1 so nearly equal
      // powers never cancel
      const double p = seq.power_exponent();
      const double h = std::ldexp(1.0, -static_cast<int>(k));
      const double u = static_cast<double>(j) * h;
      double base = std::pow(1.0 + u, 1.0 - p);
      double frac = -std::expm1((1.0 - p) * std::log1p(h / (1.0 + u)));
      double geom = -std::expm1((1.0 - p) * kLn2);
      return base * frac * std::exp2(static_cast<double>(k) * (1.0 - p)) /
             geom;
    }
    case SequenceFamily::kExplicit: {
      // level-by-level tail differences; portions decay at least
      // geometrically so the loop terminates fast
      double mass = 0.0;
      const uint64_t cap = seq.max_index() + 1;
      for (uint32_t m = k; m <= 61; ++m) {
        uint64_t lo = (uint64_t{1} << m) + (j << (m - k));
        if (lo >= cap) break;
        uint64_t hi = lo + (uint64_t{1} << (m - k));
        uint64_t hi_eff = hi < cap ? hi : cap;
        double portion = seq.tail_value(lo) - seq.tail_value(hi_eff);
        mass += portion;
        if (hi >= cap) break;
        if (!(portion > mass * 1e-18)) break;
      }
      return mass;
    }
  }
  return 0.0;
}

}  // namespace build_detail

// Step-depth realization of the Cantor-type complementary set: the 2^depth
// closed intervals left after removing gaps a_1 .. a_{2^depth - 1}.
inline IntervalSet build_cantor(const SequenceModel& seq, uint32_t depth) {
  if (depth < 1 || depth > 25)
    throw ValidationError("cantor depth must be in [1, 25], got " +
                          std::to_string(depth));
  if (seq.family() == SequenceFamily::kExplicit &&
      seq.explicit_tail_ratio() == 0.0)
    throw ValidationError(
        "cantor construction needs infinitely many gaps; explicit family "
        "requires a tail ratio");

  const uint32_t K = depth;
  const uint64_t leaves = uint64_t{1} << K;
  // subtree masses are non-increasing in j, so the extremes bound all leaves
  double first_leaf = build_detail::subtree_mass(seq, K, 0);
  double last_leaf = build_detail::subtree_mass(seq, K, leaves - 1);
  if (!std::isfinite(first_leaf) || !(last_leaf >= 1e-290))
    throw PrecisionError("cantor depth " + std::to_string(K) +
                         ": subtree masses underflow double precision");

  const bool block = seq.family() == SequenceFamily::kDyadicGeometric ||
                     seq.family() == SequenceFamily::kDyadicSchedule;
  std::vector<double> level_mass, level_gap;
  if (block) {
    level_mass.resize(K + 2);
    level_gap.resize(K + 1);
    for (uint32_t k = 0; k <= K + 1; ++k)
      level_mass[k] = std::exp(seq.scale_log(k));
    for (uint32_t k = 0; k <= K; ++k) level_gap[k] = seq.gap_value(k);
  }

  std::vector<Component> comps;
  comps.reserve(leaves);
  struct Node {
    uint32_t k;
    uint64_t j;
    double left, len;
  };
  std::vector<Node> stack;
  stack.reserve(2 * K + 2);
  stack.push_back({0, 0, 0.0, 1.0});
  double max_len = 0.0;
  double prev_right = -1.0;
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (nd.k == K) {
      if (!(nd.left > prev_right))
        throw PrecisionError("cantor depth " + std::to_string(K) +
                             ": component positions collide");
      prev_right = nd.left + nd.len;
      if (!(prev_right > nd.left))
        throw PrecisionError("cantor depth " + std::to_string(K) +
                             ": component narrower than position resolution");
      comps.push_back({nd.left, prev_right});
      if (nd.len > max_len) max_len = nd.len;
      continue;
    }
    double g = block ? level_gap[nd.k]
                     : seq.term((uint64_t{1} << nd.k) + nd.j);
    double len_left = block ? level_mass[nd.k + 1]
                            : build_detail::subtree_mass(seq, nd.k + 1,
                                                         2 * nd.j);
    // right length by subtraction keeps node mass additive exactly
    double len_right = nd.len - g - len_left;
    if (!(len_right > 0.0) || !(len_left > 0.0))
      throw PrecisionError("cantor depth " + std::to_string(K) +
                           ": subtree mass lost to rounding");
    double right_left = (nd.left + len_left) + g;
    stack.push_back({nd.k + 1, 2 * nd.j + 1, right_left, len_right});
    stack.push_back({nd.k + 1, 2 * nd.j, nd.left, len_left});
  }
  if (std::abs(comps.back().right - 1.0) <= 1e-12) comps.back().right = 1.0;

  BuildInfo info{"cantor", build_detail::flatten_spec(seq), K, 0};
  return IntervalSet(std::move(comps), max_len, std::move(info));
}

// Countable realization: isolated points x_1 > ... > x_count plus the solid
// residual [0, x_{count+1}] hiding all deeper points.
inline IntervalSet build_countable(const SequenceModel& seq, uint64_t count) {
  if (count < 1) throw ValidationError("countable count must be >= 1");
  if (count > (uint64_t{1} << 26))
    throw ValidationError("countable count exceeds 2^26");
  if (count > seq.max_index())
    throw ValidationError("countable count exceeds the finite sequence range");

  double residual_right = seq.tail_value(count + 1);
  std::vector<Component> comps;
  comps.reserve(count + 1);
  comps.push_back({0.0, residual_right});
  double prev_right = residual_right;
  for (uint64_t k = count; k >= 1; --k) {
    double x = seq.tail_value(k);
    if (k == 1 && std::abs(x - 1.0) <= 1e-12) x = 1.0;
    if (!(x > prev_right))
      throw PrecisionError("countable point " + std::to_string(k) +
                           " collides with its neighbor");
    comps.push_back({x, x});
    prev_right = x;
  }

  BuildInfo info{"countable", build_detail::flatten_spec(seq), 0, count};
  return IntervalSet(std::move(comps), residual_right, std::move(info));
}

}  // namespace gapdim
