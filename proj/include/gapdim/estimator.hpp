#pragma once

// Empirical dimension estimation. For each rung of a shrinking delta ladder
// the target is rebuilt so its unresolved residual fits below the finest
// admissible scale, then the exponent where the optimal cover cost crosses 1
// is located by bisection (cost is non-increasing in the exponent). The
// crossing at the finest rung is reported as the trend. Rows are computed
// sequentially; each (delta, s) evaluation is independent of the others, so
// evaluation order can never change the numbers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gapdim/builders.hpp"
#include "gapdim/cover.hpp"

namespace gapdim {

struct ResolutionPolicy {
  uint32_t max_depth = 24;         // cantor recipes: up to 2^depth components
  uint64_t max_count = 4'000'000;  // countable recipes: isolated points
  double min_len = 4e-13;          // refuse admissible lengths below this
};

// a target described by how to rebuild it at any requested resolution
struct SetRecipe {
  enum class Kind { kCantor, kCountable };
  Kind kind;
  SequenceModel model;

  static SetRecipe cantor(SequenceModel model) {
    return {Kind::kCantor, std::move(model)};
  }
  static SetRecipe countable(SequenceModel model) {
    return {Kind::kCountable, std::move(model)};
  }
};

struct EstimateRow {
  double theta = 0.0;
  double delta = 0.0;
  double s_star = 0.0;
  double cost_at_s_star = 0.0;
  uint64_t components = 0;
  double runtime_ms = 0.0;
};

struct EstimateResult {
  std::vector<EstimateRow> rows;
  double trend = 0.0;  // s_star at the finest delta
};

namespace estimate_detail {

// 12 rounds bracket the crossing to width 2^-12; the cover DP dominates cost
inline constexpr int kBisectRounds = 12;
inline constexpr double kResolveSlack = 1e-12;

inline void check_ladder(const std::vector<double>& ladder) {
  if (ladder.empty())
    throw ValidationError("estimator needs a non-empty delta ladder");
  for (size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || !(ladder[i] < 1.0))
      throw ValidationError("delta ladder entries must lie in (0, 1)");
    if (i > 0 && !(ladder[i] < ladder[i - 1]))
      throw ValidationError("delta ladder must be strictly decreasing");
  }
}

// minimal depth whose widest leaf fits inside len; leaf masses shrink with
// depth and the j=0 subtree is the widest, so a forward scan is exact
inline uint32_t resolve_depth(const SequenceModel& seq, double len,
                              const ResolutionPolicy& policy) {
  const uint32_t cap = std::min<uint32_t>(policy.max_depth, 25u);
  for (uint32_t k = 1; k <= cap; ++k)
    if (build_detail::subtree_mass(seq, k, 0) <= len * (1.0 + kResolveSlack))
      return k;
  throw PrecisionError("resolving to scale " +
                       cover_detail::format_scale(len) +
                       " needs depth beyond the policy cap " +
                       std::to_string(cap));
}

// minimal count whose hidden tail fits inside len
inline uint64_t resolve_count(const SequenceModel& seq, double len,
                              const ResolutionPolicy& policy) {
  const uint64_t cap = std::min(policy.max_count, seq.max_index());
  const double target = len * (1.0 + kResolveSlack);
  if (!(seq.tail_value(cap + 1) <= target))
    throw PrecisionError("resolving to scale " +
                         cover_detail::format_scale(len) +
                         " needs more than " + std::to_string(cap) +
                         " points");
  uint64_t lo = 1, hi = cap;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (seq.tail_value(mid + 1) <= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// crossing of cost(s) = 1 on [0, 1], clamped at the ends: a full-measure
// target keeps cost(1) >= 1, a single-interval cover keeps cost(0) <= 1
inline std::pair<double, double> bisect_crossing(CoverSolver& solver) {
  double at_one = solver.cost(1.0);
  if (at_one >= 1.0) return {1.0, at_one};
  double at_zero = solver.cost(0.0);
  if (at_zero <= 1.0) return {0.0, at_zero};
  double lo = 0.0, hi = 1.0;
  for (int round = 0; round < kBisectRounds; ++round) {
    double mid = 0.5 * (lo + hi);
    (solver.cost(mid) > 1.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  return {s, solver.cost(s)};
}

}  // namespace estimate_detail

// crossing exponents for an already-built set; every ladder entry must be
// coarse enough for the set's residual bound or the cover layer refuses
inline EstimateResult estimate_set_dimension(
    const IntervalSet& set, double theta,
    const std::vector<double>& delta_ladder) {
  estimate_detail::check_ladder(delta_ladder);
  EstimateResult result;
  for (double delta : delta_ladder) {
    auto start = std::chrono::steady_clock::now();
    CoverProblem problem = CoverProblem::from_scales(set, theta, delta, 1.0);
    CoverSolver solver(problem);
    auto [s_star, cost] = estimate_detail::bisect_crossing(solver);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    result.rows.push_back({theta, delta, s_star, cost,
                           static_cast<uint64_t>(set.components().size()),
                           ms});
  }
  result.trend = result.rows.back().s_star;
  return result;
}

// rebuilds the target per rung so the residual sits below delta^(1/theta),
// then locates the cost crossing; identical resolutions reuse one build
inline EstimateResult estimate_dimension(
    const SetRecipe& recipe, double theta,
    const std::vector<double>& delta_ladder,
    const ResolutionPolicy& policy = {}) {
  estimate_detail::check_ladder(delta_ladder);
  if (!(theta > 0.0) || !(theta <= 1.0))
    throw ValidationError("theta must lie in (0, 1], got " +
                          std::to_string(theta));

  EstimateResult result;
  std::optional<IntervalSet> built;
  uint64_t built_key = 0;
  for (double delta : delta_ladder) {
    auto start = std::chrono::steady_clock::now();
    double finest = std::pow(delta, 1.0 / theta);
    if (!(finest >= policy.min_len))
      throw PrecisionError("ladder entry " +
                           cover_detail::format_scale(delta) +
                           " needs scale " +
                           cover_detail::format_scale(finest) +
                           " below the resolution floor " +
                           cover_detail::format_scale(policy.min_len));
    uint64_t key;
    if (recipe.kind == SetRecipe::Kind::kCantor)
      key = estimate_detail::resolve_depth(recipe.model, finest, policy);
    else
      key = estimate_detail::resolve_count(recipe.model, finest, policy);
    if (!built || key != built_key) {
      if (recipe.kind == SetRecipe::Kind::kCantor)
        built.emplace(build_cantor(recipe.model, static_cast<uint32_t>(key)));
      else
        built.emplace(build_countable(recipe.model, key));
      built_key = key;
    }
    CoverProblem problem = CoverProblem::from_scales(*built, theta, delta, 1.0);
    CoverSolver solver(problem);
    auto [s_star, cost] = estimate_detail::bisect_crossing(solver);
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    result.rows.push_back({theta, delta, s_star, cost,
                           static_cast<uint64_t>(built->components().size()),
                           ms});
  }
  result.trend = result.rows.back().s_star;
  return result;
}

}  // namespace gapdim
