#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gapdim/errors.hpp"
#include "gapdim/interval_set.hpp"

namespace gapdim {

// Both reach-query engines are exact and return identical values; the choice
// only affects speed. The pruned segment tree wins on interval-dominated
// targets (lacunary continuation costs separate its bounds fast); the lower
// envelope wins on point-dominated targets, where continuation costs vary
// too smoothly for any bound to prune and the tree degenerates to a linear
// scan per query.
enum class ReachEngine { kAuto, kTree, kEnvelope };

// A covering problem: every cover interval must have diameter inside
// [min_len, max_len] and the cost of a cover is the sum of diameter^exponent.
struct CoverProblem {
  IntervalSet target;
  double theta;
  double delta;
  double min_len;
  double max_len;
  double exponent;
  ReachEngine reach_engine = ReachEngine::kAuto;

  static CoverProblem from_scales(IntervalSet set, double theta, double delta,
                                  double s);
  static CoverProblem from_range(IntervalSet set, double min_len,
                                 double max_len, double s);
};

struct CoverSolution {
  std::vector<Component> intervals;
  double cost = 0.0;
};

struct CoverCheck {
  bool ok = true;
  std::string message;
};

namespace cover_detail {

// positions live in [0, ~1]; the floor keeps lengths three orders of
// magnitude above one ulp so interval arithmetic stays meaningful
constexpr double kMinCoverLen = 4e-13;
constexpr double kLenSlack = 1e-12;
constexpr uint64_t kStateBudget = 64000000;
constexpr uint64_t kBrutePositionBudget = 200000;

inline std::string format_scale(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void check_exponent(double s) {
  if (!std::isfinite(s) || s < 0.0 || s > 1.0)
    throw ValidationError("cover cost exponent must lie in [0, 1]");
}

inline void check_scales(const IntervalSet& set, double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo) || !(hi < 1.0))
    throw ValidationError("admissible cover lengths must satisfy 0 < min <= max < 1");
  if (lo < kMinCoverLen)
    throw PrecisionError("smallest admissible length " + format_scale(lo) +
                         " is below the resolution floor " +
                         format_scale(kMinCoverLen));
  if (lo < set.residual_bound() * (1.0 - kLenSlack))
    throw PrecisionError("smallest admissible length " + format_scale(lo) +
                         " is finer than the target residual bound " +
                         format_scale(set.residual_bound()) +
                         "; rebuild the set deeper or raise delta");
}

// float value no greater than v, for sound pruning bounds
inline float float_floor(double v) {
  float f = static_cast<float>(v);
  if (static_cast<double>(f) > v)
    f = std::nextafterf(f, -std::numeric_limits<float>::infinity());
  return f;
}

}  // namespace cover_detail

inline CoverProblem CoverProblem::from_scales(IntervalSet set, double theta,
                                              double delta, double s) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta > 1.0)
    throw ValidationError("theta must lie in (0, 1]");
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 1.0)
    throw ValidationError("delta must lie in (0, 1)");
  cover_detail::check_exponent(s);
  double lo = std::pow(delta, 1.0 / theta);
  cover_detail::check_scales(set, lo, delta);
  return CoverProblem{std::move(set), theta, delta, lo, delta, s};
}

inline CoverProblem CoverProblem::from_range(IntervalSet set, double min_len,
                                             double max_len, double s) {
  if (!std::isfinite(min_len) || !std::isfinite(max_len))
    throw ValidationError("admissible cover lengths must be finite");
  cover_detail::check_exponent(s);
  cover_detail::check_scales(set, min_len, max_len);
  // equivalent (theta, delta) with delta^{1/theta} = min_len
  double theta = std::log(max_len) / std::log(min_len);
  return CoverProblem{std::move(set), theta, max_len, min_len, max_len, s};
}

// Exact minimal-cost covering solver.
//
// Normal form: scan left to right; every cover interval starts at the
// leftmost uncovered point. Since length^s is concave on [0,1] for
// s in [0,1], redistributing lengths along a contiguous block of intervals
// is minimized at a vertex, so an optimal cover exists whose interval
// lengths are min_len, max_len, or an exact reach to a component right
// endpoint. The state space is the closure of component left endpoints
// under those moves; it is discovered once and shared across exponents.
// Coverage honors the global length slack: a sliver narrower than
// 1e-12 * max_len counts as covered, so representation noise in component
// widths never forces a spurious extra interval.
class CoverSolver {
 public:
  explicit CoverSolver(const CoverProblem& problem)
      : problem_(problem),
        comps_(problem.target.components()),
        snap_(cover_detail::kLenSlack * problem.max_len) {
    discover_states();
    if (problem.reach_engine == ReachEngine::kAuto) {
      size_t points = 0;
      for (const Component& c : comps_) points += (c.right == c.left);
      use_envelope_ = 2 * points >= comps_.size();
    } else {
      use_envelope_ = problem.reach_engine == ReachEngine::kEnvelope;
    }
  }

  size_t state_count() const { return pos_.size(); }

  double cost(double s) {
    sweep(s);
    return value_.front();
  }

  CoverSolution solve(double s) {
    sweep(s);
    return reconstruct(s);
  }

 private:
  static constexpr size_t kDone = static_cast<size_t>(-1);

  const CoverProblem& problem_;
  const std::vector<Component>& comps_;
  // an uncovered sliver narrower than this counts as covered, matching the
  // relative slack every length comparison carries
  const double snap_;
  std::vector<double> pos_;         // state positions, ascending, unique
  std::vector<uint32_t> comp_;      // component containing each state
  std::vector<uint32_t> left_state_;  // component -> state index of its left end
  std::vector<double> value_;       // optimal cost from each state (last sweep)
  std::vector<double> cont_;        // cont_[j]: cost continuing past comp j's right end
  std::vector<float> tree_;         // segment tree of float-floored cont_
  size_t tree_base_ = 1;
  bool use_envelope_ = false;
  std::vector<int32_t> env_;        // Li Chao tree over state indices
  size_t env_base_ = 1;

  void discover_states() {
    const size_t m = comps_.size();
    const double kA = problem_.min_len;
    const double kB = problem_.max_len;
    if (m > cover_detail::kStateBudget)
      throw PrecisionError("covering state budget exceeded by the component count");

    pos_.reserve(m + m / 2);
    comp_.reserve(m + m / 2);
    std::vector<std::pair<double, uint32_t>> frontier;
    frontier.reserve(m);
    for (size_t c = 0; c < m; ++c) {
      pos_.push_back(comps_[c].left);
      comp_.push_back(static_cast<uint32_t>(c));
      frontier.emplace_back(comps_[c].left, static_cast<uint32_t>(c));
    }

    std::vector<std::pair<double, uint32_t>> cand;
    while (!frontier.empty()) {
      cand.clear();
      cand.reserve(2 * frontier.size());
      for (double step : {kA, kB}) {
        size_t cptr = 0;  // first component with right > y, monotone per pass
        for (const auto& st : frontier) {
          double y = st.first + step;
          while (cptr < m && comps_[cptr].right <= y + snap_) ++cptr;
          if (cptr == m) continue;
          if (y > comps_[cptr].left)
            cand.emplace_back(y, static_cast<uint32_t>(cptr));
        }
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end(),
                             [](const auto& a, const auto& b) {
                               return a.first == b.first;
                             }),
                 cand.end());

      // keep only positions not already known
      std::vector<std::pair<double, uint32_t>> fresh;
      fresh.reserve(cand.size());
      size_t si = 0;
      for (const auto& c : cand) {
        while (si < pos_.size() && pos_[si] < c.first) ++si;
        if (si == pos_.size() || pos_[si] != c.first) fresh.push_back(c);
      }
      if (fresh.empty()) break;
      if (pos_.size() + fresh.size() > cover_detail::kStateBudget)
        throw PrecisionError(
            "covering state budget exceeded; raise delta or reduce the build depth");

      // backward in-place merge keeps both arrays sorted
      size_t old_n = pos_.size(), add_n = fresh.size();
      pos_.resize(old_n + add_n);
      comp_.resize(old_n + add_n);
      size_t i = old_n, j = add_n, k = old_n + add_n;
      while (j > 0) {
        if (i > 0 && pos_[i - 1] > fresh[j - 1].first) {
          pos_[k - 1] = pos_[i - 1];
          comp_[k - 1] = comp_[i - 1];
          --i;
        } else {
          pos_[k - 1] = fresh[j - 1].first;
          comp_[k - 1] = fresh[j - 1].second;
          --j;
        }
        --k;
      }
      frontier = std::move(fresh);
    }

    left_state_.assign(m, 0);
    for (size_t i = 0; i < pos_.size(); ++i)
      if (pos_[i] == comps_[comp_[i]].left) left_state_[comp_[i]] = static_cast<uint32_t>(i);
  }

  // first state at or after covering through y; kDone when nothing is left
  size_t next_state(double y) const {
    size_t lo = 0, hi = comps_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (comps_[mid].right <= y + snap_)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == comps_.size()) return kDone;
    if (y <= comps_[lo].left) return left_state_[lo];
    auto it = std::lower_bound(pos_.begin(), pos_.end(), y);
    if (it == pos_.end() || *it != y)
      throw PrecisionError("internal: cover state table is missing a position");
    return static_cast<size_t>(it - pos_.begin());
  }

  void tree_update(size_t leaf, float v) {
    size_t i = tree_base_ + leaf;
    tree_[i] = v;
    for (i >>= 1; i >= 1; i >>= 1) {
      float mn = std::min(tree_[2 * i], tree_[2 * i + 1]);
      if (tree_[i] == mn) break;
      tree_[i] = mn;
      if (i == 1) break;
    }
  }

  // minimal reach candidate over components [a, b]: (right_j - p)^s + cont_[j]
  void reach_min(size_t node, size_t nlo, size_t nhi, size_t a, size_t b,
                 double p, double s, double& best) const {
    if (b < nlo || nhi < a) return;
    size_t first = std::max(nlo, a);
    double bound = std::pow(comps_[first].right - p, s) +
                   static_cast<double>(tree_[node]);
    if (!(bound < best)) return;
    if (nlo == nhi) {
      double cand = std::pow(comps_[nlo].right - p, s) + cont_[nlo];
      if (cand < best) best = cand;
      return;
    }
    size_t mid = nlo + (nhi - nlo) / 2;
    reach_min(2 * node, nlo, mid, a, b, p, s, best);
    reach_min(2 * node + 1, mid + 1, nhi, a, b, p, s, best);
  }

  double env_eval(int32_t j, double p, double s) const {
    return std::pow(comps_[j].right - p, s) + cont_[j];
  }

  // Li Chao insertion over one node segment. Any two reach candidates cross
  // at most once in p: for rights r < r' the difference
  // (r'-p)^s - (r-p)^s is strictly increasing in p when 0 < s < 1 and
  // constant at s = 0 or 1. So a candidate losing at the midpoint and both
  // endpoints loses on the whole segment.
  void env_insert_full(size_t node, size_t nlo, size_t nhi, int32_t j,
                       double s) {
    while (true) {
      int32_t cur = env_[node];
      if (cur < 0) {
        env_[node] = j;
        return;
      }
      size_t mid = nlo + (nhi - nlo) / 2;
      if (env_eval(j, pos_[mid], s) < env_eval(cur, pos_[mid], s)) {
        env_[node] = j;
        j = cur;
      }
      if (nlo == nhi) return;
      const int32_t win = env_[node];
      if (env_eval(j, pos_[nlo], s) < env_eval(win, pos_[nlo], s)) {
        node = 2 * node;
        nhi = mid;
      } else if (env_eval(j, pos_[nhi], s) < env_eval(win, pos_[nhi], s)) {
        node = 2 * node + 1;
        nlo = mid + 1;
      } else {
        return;
      }
    }
  }

  void env_insert(size_t node, size_t nlo, size_t nhi, size_t a, size_t b,
                  int32_t j, double s) {
    if (b < nlo || nhi < a) return;
    if (a <= nlo && nhi <= b) {
      env_insert_full(node, nlo, nhi, j, s);
      return;
    }
    size_t mid = nlo + (nhi - nlo) / 2;
    env_insert(2 * node, nlo, mid, a, b, j, s);
    env_insert(2 * node + 1, mid + 1, nhi, a, b, j, s);
  }

  // insert candidate j over exactly the state indices where its reach length
  // lies in (min_len, max_len], mirroring the tree engine's window tests
  void env_insert_candidate(size_t j, double s) {
    const double r = comps_[j].right;
    const double kA = problem_.min_len;
    const double kB = problem_.max_len;
    size_t lo = static_cast<size_t>(
        std::partition_point(pos_.begin(), pos_.end(),
                             [&](double p) { return r - p > kB; }) -
        pos_.begin());
    size_t hi = static_cast<size_t>(
        std::partition_point(pos_.begin(), pos_.end(),
                             [&](double p) { return r - p > kA; }) -
        pos_.begin());
    if (lo >= hi) return;
    env_insert(1, 0, env_base_ - 1, lo, hi - 1, static_cast<int32_t>(j), s);
  }

  void env_query(size_t i, double p, double s, double& best) const {
    for (size_t node = env_base_ + i; node >= 1; node >>= 1) {
      int32_t j = env_[node];
      if (j >= 0) {
        double cand = env_eval(j, p, s);
        if (cand < best) best = cand;
      }
      if (node == 1) break;
    }
  }

  void sweep(double s) {
    cover_detail::check_exponent(s);
    const size_t n = pos_.size();
    const size_t m = comps_.size();
    const double kA = problem_.min_len;
    const double kB = problem_.max_len;
    const double wa = std::pow(kA, s);
    const double wb = std::pow(kB, s);
    const double end_right = comps_.back().right;
    const double inf = std::numeric_limits<double>::infinity();

    value_.assign(n, 0.0);
    cont_.assign(m, inf);
    cont_[m - 1] = 0.0;
    ptrdiff_t env_next = -1;
    if (use_envelope_) {
      env_base_ = std::bit_ceil(n);
      env_.assign(2 * env_base_, -1);
      env_next = static_cast<ptrdiff_t>(m) - 1;
    } else {
      tree_base_ = std::bit_ceil(m);
      tree_.assign(2 * tree_base_, std::numeric_limits<float>::infinity());
      tree_update(m - 1, 0.0f);
    }

    // all pointers move only leftward as the sweep position descends
    size_t a_state = n - 1, b_state = n - 1;
    size_t a_comp = m, b_comp = m;
    size_t reach_lo = m;
    ptrdiff_t reach_hi = static_cast<ptrdiff_t>(m) - 1;

    for (size_t i = n; i-- > 0;) {
      const double p = pos_[i];
      double best;

      {
        double y = p + kA;
        if (y + snap_ >= end_right) {
          best = wa;
        } else {
          while (a_comp > 0 && comps_[a_comp - 1].right > y + snap_) --a_comp;
          if (y <= comps_[a_comp].left) {
            best = wa + value_[left_state_[a_comp]];
          } else {
            while (pos_[a_state] > y) --a_state;
            if (pos_[a_state] != y)
              throw PrecisionError("internal: cover state table is missing a position");
            best = wa + value_[a_state];
          }
        }
      }
      if (kB > kA) {
        double y = p + kB;
        double cand;
        if (y + snap_ >= end_right) {
          cand = wb;
        } else {
          while (b_comp > 0 && comps_[b_comp - 1].right > y + snap_) --b_comp;
          if (y <= comps_[b_comp].left) {
            cand = wb + value_[left_state_[b_comp]];
          } else {
            while (pos_[b_state] > y) --b_state;
            if (pos_[b_state] != y)
              throw PrecisionError("internal: cover state table is missing a position");
            cand = wb + value_[b_state];
          }
        }
        if (cand < best) best = cand;
      }

      if (use_envelope_) {
        // candidates activate as soon as their reach length clears min_len;
        // cont_ entries right of the sweep position are already final
        while (env_next >= 0 && comps_[env_next].right - p > kA) {
          env_insert_candidate(static_cast<size_t>(env_next), s);
          --env_next;
        }
        env_query(i, p, s, best);
      } else {
        while (reach_hi >= 0 && comps_[reach_hi].right - p > kB) --reach_hi;
        while (reach_lo > 0 && comps_[reach_lo - 1].right - p > kA) --reach_lo;
        if (reach_hi >= 0 && reach_lo <= static_cast<size_t>(reach_hi))
          reach_min(1, 0, tree_base_ - 1, reach_lo,
                    static_cast<size_t>(reach_hi), p, s, best);
      }

      value_[i] = best;
      const uint32_t ci = comp_[i];
      if (ci > 0 && pos_[i] == comps_[ci].left) {
        cont_[ci - 1] = best;
        if (!use_envelope_) tree_update(ci - 1, cover_detail::float_floor(best));
      }
    }
  }

  CoverSolution reconstruct(double s) const {
    const size_t m = comps_.size();
    const double kA = problem_.min_len;
    const double kB = problem_.max_len;
    const double wa = std::pow(kA, s);
    const double wb = std::pow(kB, s);
    const double end_right = comps_.back().right;

    CoverSolution out;
    double sum = 0.0, comp_err = 0.0;
    auto add_cost = [&](double len) {
      double term = std::pow(len, s);
      double y = term - comp_err;
      double t = sum + y;
      comp_err = (t - sum) - y;
      sum = t;
    };

    size_t i = 0;
    size_t steps = 0;
    while (true) {
      if (++steps > pos_.size() + 2)
        throw PrecisionError("internal: cover reconstruction failed to terminate");
      const double p = pos_[i];
      const double v = value_[i];

      double ya = p + kA;
      size_t ta = (ya + snap_ >= end_right) ? kDone : next_state(ya);
      double ca = (ta == kDone) ? wa : wa + value_[ta];
      if (ca == v) {
        out.intervals.push_back({p, ya});
        add_cost(ya - p);
        if (ta == kDone) break;
        i = ta;
        continue;
      }

      size_t j = 0;
      {
        size_t lo = 0, hi = m;
        while (lo < hi) {
          size_t mid = (lo + hi) / 2;
          if (comps_[mid].right - p > kA)
            hi = mid;
          else
            lo = mid + 1;
        }
        j = lo;
      }
      bool taken = false;
      for (; j < m && comps_[j].right - p <= kB; ++j) {
        double cand = std::pow(comps_[j].right - p, s) + cont_[j];
        if (cand == v) {
          out.intervals.push_back({p, comps_[j].right});
          add_cost(comps_[j].right - p);
          taken = true;
          if (j + 1 == m) {
            i = kDone;
          } else {
            i = left_state_[j + 1];
          }
          break;
        }
      }
      if (taken) {
        if (i == kDone) break;
        continue;
      }

      double yb = p + kB;
      size_t tb = (yb + snap_ >= end_right) ? kDone : next_state(yb);
      double cb = (tb == kDone) ? wb : wb + value_[tb];
      if (cb == v) {
        out.intervals.push_back({p, yb});
        add_cost(yb - p);
        if (tb == kDone) break;
        i = tb;
        continue;
      }
      throw PrecisionError("internal: cover reconstruction lost the optimal chain");
    }
    out.cost = sum;
    return out;
  }
};

inline CoverSolution optimal_cover(const CoverProblem& problem) {
  CoverSolver solver(problem);
  return solver.solve(problem.exponent);
}

inline double optimal_cover_cost(const CoverProblem& problem, double s) {
  CoverSolver solver(problem);
  return solver.cost(s);
}

// Exhaustive oracle over a fixed grid of interval lengths. Every interval
// starts at the leftmost uncovered point, so the search space is the closure
// of the first left endpoint under grid shifts.
inline CoverSolution brute_force_cover(const std::vector<Component>& comps,
                                       const std::vector<double>& length_grid,
                                       double s) {
  cover_detail::check_exponent(s);
  if (comps.size() > 12)
    throw ValidationError("brute-force cover oracle accepts at most 12 components");
  for (size_t i = 0; i < comps.size(); ++i) {
    const Component& c = comps[i];
    if (!std::isfinite(c.left) || !std::isfinite(c.right) || c.left > c.right)
      throw ValidationError("brute-force target component " + std::to_string(i) +
                            " is not a closed interval");
    if (i > 0 && comps[i - 1].right >= c.left)
      throw ValidationError("brute-force target components are not strictly sorted");
  }
  if (comps.empty()) return {};

  std::vector<double> grid = length_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty() || !(grid.front() > 0.0) || !std::isfinite(grid.back()))
    throw ValidationError("brute-force length grid must contain positive finite lengths");

  const size_t m = comps.size();
  auto next_pos = [&](double y) -> double {
    for (size_t c = 0; c < m; ++c)
      if (comps[c].right > y)
        return std::max(y, comps[c].left);
    return std::numeric_limits<double>::quiet_NaN();  // fully covered
  };
  auto key = [](double v) { return std::bit_cast<uint64_t>(v); };

  // breadth-first closure of reachable uncovered positions
  std::vector<double> order{comps.front().left};
  std::unordered_set<uint64_t> seen{key(order[0])};
  for (size_t qi = 0; qi < order.size(); ++qi) {
    for (double len : grid) {
      double q = next_pos(order[qi] + len);
      if (std::isnan(q)) continue;
      if (seen.insert(key(q)).second) {
        if (order.size() >= cover_detail::kBrutePositionBudget)
          throw ValidationError("brute-force position budget exceeded");
        order.push_back(q);
      }
    }
  }
  std::sort(order.begin(), order.end(), std::greater<double>());

  std::unordered_map<uint64_t, double> val;
  val.reserve(order.size() * 2);
  for (double p : order) {
    double best = std::numeric_limits<double>::infinity();
    for (double len : grid) {
      double q = next_pos(p + len);
      double cand = std::pow(len, s) + (std::isnan(q) ? 0.0 : val.at(key(q)));
      if (cand < best) best = cand;
    }
    val[key(p)] = best;
  }

  CoverSolution out;
  double sum = 0.0, comp_err = 0.0;
  double p = comps.front().left;
  size_t steps = 0;
  while (true) {
    if (++steps > order.size() + 2)
      throw PrecisionError("internal: brute-force reconstruction failed to terminate");
    double v = val.at(key(p));
    bool done = false, taken = false;
    for (double len : grid) {
      double q = next_pos(p + len);
      double cand = std::pow(len, s) + (std::isnan(q) ? 0.0 : val.at(key(q)));
      if (cand == v) {
        out.intervals.push_back({p, p + len});
        double y = std::pow(len, s) - comp_err;
        double t = sum + y;
        comp_err = (t - sum) - y;
        sum = t;
        if (std::isnan(q))
          done = true;
        else
          p = q;
        taken = true;
        break;
      }
    }
    if (!taken)
      throw PrecisionError("internal: brute-force reconstruction lost its chain");
    if (done) break;
  }
  out.cost = sum;
  return out;
}

// Covers the input intervals by at most 2m intervals of diameter exactly c:
// each input of length len gets ceil(len / c) pieces, and the precondition
// sum(len) <= c * m bounds the total piece count by 2m.
inline std::vector<Component> regularize_cover(
    const std::vector<Component>& intervals, double c) {
  if (!std::isfinite(c) || c <= 0.0)
    throw ValidationError("regularization diameter must be positive");
  double total = 0.0;
  for (const Component& u : intervals) {
    if (!std::isfinite(u.left) || !std::isfinite(u.right) || u.left > u.right)
      throw ValidationError("regularization input is not a closed interval");
    total += u.right - u.left;
  }
  double bound = c * static_cast<double>(intervals.size());
  if (total > bound * (1.0 + cover_detail::kLenSlack))
    throw ValidationError(
        "regularization precondition violated: total length " +
        cover_detail::format_scale(total) + " exceeds count * diameter " +
        cover_detail::format_scale(bound));

  std::vector<Component> out;
  for (const Component& u : intervals) {
    double len = u.right - u.left;
    double q = len / c;
    auto k = static_cast<uint64_t>(std::ceil(q));
    if (k > 1 && (static_cast<double>(k) - q) > 1.0 - 1e-9) --k;  // snap ulp overshoots
    if (k == 0) k = 1;
    for (uint64_t j = 0; j + 1 < k; ++j) {
      double left = u.left + static_cast<double>(j) * c;
      out.push_back({left, left + c});
    }
    double left = std::max(u.left, u.right - c);
    double right = std::max(left + c, u.right);
    out.push_back({left, right});
  }
  return out;
}

inline std::vector<std::pair<double, double>> cost_profile(
    const IntervalSet& target, double theta, double delta,
    const std::vector<double>& s_grid) {
  if (s_grid.empty() || !std::is_sorted(s_grid.begin(), s_grid.end()))
    throw ValidationError("exponent grid must be non-empty and sorted");
  CoverProblem problem = CoverProblem::from_scales(target, theta, delta,
                                                   s_grid.front());
  CoverSolver solver(problem);
  std::vector<std::pair<double, double>> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) out.emplace_back(s, solver.cost(s));
  return out;
}

inline CoverCheck verify_cover(const CoverProblem& problem,
                               const CoverSolution& solution) {
  const double kA = problem.min_len;
  const double kB = problem.max_len;
  const double eps = std::numeric_limits<double>::epsilon();

  if (solution.intervals.empty()) return {false, "cover has no intervals"};

  std::vector<Component> sorted = solution.intervals;
  std::sort(sorted.begin(), sorted.end(),
            [](const Component& a, const Component& b) {
              return a.left < b.left;
            });
  for (size_t i = 0; i < sorted.size(); ++i) {
    double len = sorted[i].right - sorted[i].left;
    double slack = cover_detail::kLenSlack * kA +
                   16.0 * eps * std::max(std::fabs(sorted[i].left),
                                         std::fabs(sorted[i].right));
    if (len < kA - slack || len > kB + cover_detail::kLenSlack * kB + slack)
      return {false, "interval " + std::to_string(i) + " has inadmissible length " +
                         cover_detail::format_scale(len)};
  }

  // merge into maximal blocks, then check each component sits inside one
  std::vector<Component> blocks;
  for (const Component& u : sorted) {
    if (!blocks.empty() && u.left <= blocks.back().right + 16.0 * eps)
      blocks.back().right = std::max(blocks.back().right, u.right);
    else
      blocks.push_back(u);
  }
  size_t bi = 0;
  const auto& comps = problem.target.components();
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const Component& c = comps[ci];
    while (bi < blocks.size() && blocks[bi].right < c.left) ++bi;
    // solver-side snapping may leave slivers one length-slack wide uncovered
    double tol = cover_detail::kLenSlack * kB +
                 16.0 * eps * std::max(1.0, std::fabs(c.right));
    if (bi == blocks.size() || blocks[bi].left > c.left + tol ||
        blocks[bi].right < c.right - tol)
      return {false, "component " + std::to_string(ci) + " is not covered"};
  }

  double sum = 0.0, comp_err = 0.0;
  for (const Component& u : sorted) {
    double y = std::pow(u.right - u.left, problem.exponent) - comp_err;
    double t = sum + y;
    comp_err = (t - sum) - y;
    sum = t;
  }
  double scale = std::max({1.0, std::fabs(sum), std::fabs(solution.cost)});
  if (std::fabs(sum - solution.cost) > 1e-12 * scale)
    return {false, "stored cost " + cover_detail::format_scale(solution.cost) +
                       " disagrees with recomputation " +
                       cover_detail::format_scale(sum)};
  return {true, ""};
}

}  // namespace gapdim
