#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "gapdim/builders.hpp"
#include "gapdim/cover.hpp"
#include "gapdim/sequence.hpp"

using gapdim::BuildInfo;
using gapdim::Component;
using gapdim::CoverProblem;
using gapdim::CoverSolution;
using gapdim::CoverSolver;
using gapdim::IntervalSet;
using gapdim::PrecisionError;
using gapdim::SequenceModel;
using gapdim::ValidationError;

namespace {

IntervalSet points(std::vector<double> xs) {
  std::vector<Component> comps;
  for (double x : xs) comps.push_back({x, x});
  return IntervalSet(std::move(comps), 0.0, BuildInfo{"test", "", 0, 0});
}

IntervalSet solid_unit() {
  return IntervalSet({{0.0, 1.0}}, 0.0, BuildInfo{"test", "", 0, 0});
}

}  // namespace

TEST_CASE("four point target at unit cost exponent") {
  CoverProblem problem =
      CoverProblem::from_range(points({0.0, 0.3, 0.35, 1.0}), 0.1, 0.4, 1.0);
  CoverSolution sol = gapdim::optimal_cover(problem);
  CHECK(sol.cost == Catch::Approx(0.3).epsilon(1e-12));
  REQUIRE(sol.intervals.size() == 3);
  CHECK(sol.intervals[0].left == 0.0);
  CHECK(sol.intervals[1].left == 0.3);
  CHECK(sol.intervals[2].left == 1.0);
  CHECK(gapdim::verify_cover(problem, sol).ok);

  CoverSolver solver(problem);
  CHECK(solver.state_count() == 4);
}

TEST_CASE("four point target rewards long intervals at small exponents") {
  CoverProblem problem =
      CoverProblem::from_range(points({0.0, 0.3, 0.35, 1.0}), 0.1, 0.4, 0.5);
  CoverSolution sol = gapdim::optimal_cover(problem);
  CHECK(sol.cost ==
        Catch::Approx(std::sqrt(0.35) + std::sqrt(0.1)).epsilon(1e-12));
  REQUIRE(sol.intervals.size() == 2);
  CHECK(sol.intervals[0].right == 0.35);  // exact reach to an endpoint
  CHECK(gapdim::verify_cover(problem, sol).ok);
}

TEST_CASE("single point costs one minimal interval") {
  CoverProblem problem =
      CoverProblem::from_scales(points({0.42}), 0.5, 0.25, 0.7);
  CHECK(problem.min_len == Catch::Approx(0.0625).epsilon(1e-15));
  CoverSolution sol = gapdim::optimal_cover(problem);
  REQUIRE(sol.intervals.size() == 1);
  CHECK(sol.cost == Catch::Approx(std::pow(0.0625, 0.7)).epsilon(1e-12));
}

TEST_CASE("solid interval forced march and vertex split") {
  // equal admissible lengths force a chain of 64 pieces
  CoverProblem forced =
      CoverProblem::from_scales(solid_unit(), 1.0, 1.0 / 64.0, 1.0);
  CoverSolver solver(forced);
  CHECK(solver.cost(0.0) == Catch::Approx(64.0));
  CHECK(solver.cost(1.0) == Catch::Approx(1.0).epsilon(1e-12));

  // with room to choose, the optimum is three long pieces and one remainder
  CoverProblem vertex = CoverProblem::from_range(solid_unit(), 0.09, 0.3, 0.5);
  CoverSolver vsolver(vertex);
  double p3 = 0.3 + 0.3 + 0.3;
  double rem = 1.0 - p3;
  CHECK(vsolver.cost(0.0) == Catch::Approx(4.0));
  CHECK(vsolver.cost(1.0) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(vsolver.cost(0.5) ==
        Catch::Approx(3.0 * std::sqrt(0.3) + std::sqrt(rem)).epsilon(1e-14));
  CoverSolution sol = vsolver.solve(0.5);
  REQUIRE(sol.intervals.size() == 4);
  CHECK(sol.intervals.back().right == 1.0);
  CHECK(gapdim::verify_cover(CoverProblem::from_range(solid_unit(), 0.09, 0.3,
                                                      0.5),
                             sol)
            .ok);
}

TEST_CASE("block-aligned scales reproduce the self-similar cost law") {
  SequenceModel seq = SequenceModel::dyadic_geometric(1.0 / 3.0);
  IntervalSet set = build_cantor(seq, 6);
  double scale = std::pow(3.0, -3);
  CoverProblem problem = CoverProblem::from_range(
      set, scale * (1.0 - 1e-9), scale, 0.5);
  CoverSolver solver(problem);
  // every admissible interval covers exactly one level-3 block of 8
  CHECK(solver.cost(0.0) == Catch::Approx(8.0));
  CHECK(solver.cost(1.0) == Catch::Approx(8.0 / 27.0).epsilon(1e-9));
  double s_star = std::log(2.0) / std::log(3.0);
  CHECK(solver.cost(s_star) == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scaling the target and scales by lambda scales cost by lambda^s") {
  for (double s : {0.2, 1.0}) {
    double base =
        gapdim::optimal_cover_cost(CoverProblem::from_range(
                                       points({0.0, 0.5}), 0.1, 0.6, s),
                                   s);
    double shrunk =
        gapdim::optimal_cover_cost(CoverProblem::from_range(
                                       points({0.0, 0.25}), 0.05, 0.3, s),
                                   s);
    CHECK(shrunk == Catch::Approx(std::pow(0.5, s) * base).epsilon(1e-12));
  }
}

TEST_CASE("cost profile is non-increasing and cheaper with wider scales") {
  SequenceModel seq = SequenceModel::dyadic_geometric(1.0 / 3.0);
  IntervalSet set = build_cantor(seq, 6);
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  auto profile = gapdim::cost_profile(set, 0.7, 0.05, grid);
  REQUIRE(profile.size() == grid.size());
  for (size_t i = 1; i < profile.size(); ++i)
    CHECK(profile[i].second <= profile[i - 1].second + 1e-12);
  CHECK(profile.front().second >= 1.0);  // counting measure needs >= 1 interval

  // enlarging the admissible range never increases cost
  for (double s : {0.3, 0.8}) {
    double narrow = gapdim::optimal_cover_cost(
        CoverProblem::from_range(set, 0.02, 0.05, s), s);
    double wide = gapdim::optimal_cover_cost(
        CoverProblem::from_range(set, 0.01, 0.08, s), s);
    CHECK(wide <= narrow + 1e-12);
  }
}

TEST_CASE("brute force oracle matches its closed forms") {
  auto pts = [](std::initializer_list<double> xs) {
    std::vector<Component> comps;
    for (double x : xs) comps.push_back({x, x});
    return comps;
  };
  CoverSolution four =
      gapdim::brute_force_cover(pts({0.0, 0.3, 0.35, 1.0}),
                                {0.1, 0.3, 0.35, 0.4}, 1.0);
  CHECK(four.cost == Catch::Approx(0.3).epsilon(1e-12));

  // two points at distance d: either one bridge or two minimal pieces
  CoverSolution bridge =
      gapdim::brute_force_cover(pts({0.0, 0.25}), {0.25, 0.0625}, 1.0);
  CHECK(bridge.cost == Catch::Approx(0.125).epsilon(1e-12));
  CoverSolution split =
      gapdim::brute_force_cover(pts({0.0, 0.25}), {0.25, 0.2}, 1.0);
  CHECK(split.cost == Catch::Approx(0.25).epsilon(1e-12));

  CoverSolution empty = gapdim::brute_force_cover({}, {0.1}, 1.0);
  CHECK(empty.cost == 0.0);
  CHECK(empty.intervals.empty());
}

TEST_CASE("dynamic program agrees with the brute force oracle") {
  // targets live on a dyadic lattice so every reach and landing is exact
  std::mt19937_64 rng(20260816ull);
  const double unit = std::ldexp(1.0, -14);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> count_d(1, 8);
    std::uniform_int_distribution<int> gap_d(1, 600);
    std::uniform_int_distribution<int> len_d(0, 40);
    int m = count_d(rng);
    std::vector<Component> comps;
    long cursor = 0;
    for (int i = 0; i < m; ++i) {
      cursor += gap_d(rng);
      long left = cursor;
      cursor += len_d(rng);
      comps.push_back({left * unit, cursor * unit});
      cursor += 1;
    }
    if (comps.back().right > 1.0) continue;

    double lo = 64 * unit, hi = 512 * unit;
    for (double s : {0.0, 0.37, 1.0}) {
      CoverProblem problem = CoverProblem::from_range(
          IntervalSet(comps, 0.0, BuildInfo{"test", "", 0, 0}), lo, hi, s);

      // grid closure: lengths {lo, hi} plus exact reaches from every
      // reachable position
      std::set<double> positions, grid{lo, hi};
      positions.insert(comps.front().left);
      auto next_pos = [&](double y) -> double {
        for (const Component& c : comps)
          if (c.right > y) return std::max(y, c.left);
        return -1.0;
      };
      for (int round = 0; round < 64; ++round) {
        bool grew = false;
        std::set<double> pos_copy = positions;
        for (double p : pos_copy)
          for (const Component& c : comps) {
            double d = c.right - p;
            if (d > lo && d <= hi && grid.insert(d).second) grew = true;
          }
        std::set<double> grid_copy = grid;
        for (double p : pos_copy)
          for (double len : grid_copy) {
            double q = next_pos(p + len);
            if (q >= 0.0 && positions.insert(q).second) grew = true;
          }
        if (!grew) break;
        REQUIRE(positions.size() < 5000);
      }

      CoverSolution dp = gapdim::optimal_cover(problem);
      CoverSolution brute = gapdim::brute_force_cover(
          comps, std::vector<double>(grid.begin(), grid.end()), s);
      CHECK(dp.cost == Catch::Approx(brute.cost).epsilon(1e-12).margin(1e-15));
      CHECK(gapdim::verify_cover(problem, dp).ok);
      ++checked;

      // the optimum never exceeds any sampled admissible cover
      std::uniform_real_distribution<double> len_pick(lo, hi);
      for (int walk = 0; walk < 5; ++walk) {
        double pos = comps.front().left, cost = 0.0;
        for (int step = 0; step < 4000; ++step) {
          double len = len_pick(rng);
          cost += std::pow(len, s);
          double q = next_pos(pos + len);
          if (q < 0.0) break;
          pos = q;
        }
        CHECK(dp.cost <= cost + 1e-12);
      }
    }
  }
  REQUIRE(checked >= 60);
}

TEST_CASE("regularizer chops intervals into equal diameters") {
  auto one = gapdim::regularize_cover({{0.2, 0.45}}, 0.25);
  REQUIRE(one.size() == 1);
  CHECK(one[0].left == 0.2);
  CHECK(one[0].right == Catch::Approx(0.45).margin(1e-15));

  auto two = gapdim::regularize_cover({{0.0, 0.1}, {0.8, 0.9}}, 0.2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].length() == Catch::Approx(0.2).epsilon(1e-12));
  CHECK(two[1].length() == Catch::Approx(0.2).epsilon(1e-12));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double c = 0.01 + 0.2 * u(rng);
    size_t m = 1 + static_cast<size_t>(u(rng) * 5.9);
    std::vector<Component> in;
    double budget = c * static_cast<double>(m);
    double start = 0.0;
    for (size_t i = 0; i < m; ++i) {
      double len = std::min(budget, u(rng) * c * 1.8);
      budget -= len;
      start += 0.01 + u(rng) * 0.05;
      in.push_back({start, start + len});
      start += len;
    }
    auto out = gapdim::regularize_cover(in, c);
    REQUIRE(out.size() <= 2 * m);
    for (const Component& piece : out)
      CHECK(piece.length() == Catch::Approx(c).epsilon(1e-9));
    // containment: merged output blocks must absorb every input interval
    std::vector<Component> blocks;
    std::vector<Component> sorted_out = out;
    std::sort(sorted_out.begin(), sorted_out.end(),
              [](const Component& a, const Component& b) {
                return a.left < b.left;
              });
    for (const Component& piece : sorted_out) {
      if (!blocks.empty() && piece.left <= blocks.back().right + 1e-12)
        blocks.back().right = std::max(blocks.back().right, piece.right);
      else
        blocks.push_back(piece);
    }
    for (const Component& src : in) {
      bool inside = false;
      for (const Component& b : blocks)
        if (b.left <= src.left + 1e-12 && src.right <= b.right + 1e-12)
          inside = true;
      CHECK(inside);
    }
  }

  CHECK_THROWS_AS(gapdim::regularize_cover({{0.0, 0.5}, {0.6, 1.0}}, 0.2),
                  ValidationError);
  CHECK_THROWS_AS(gapdim::regularize_cover({{0.0, 0.1}}, 0.0), ValidationError);
}

TEST_CASE("cover verification flags defects") {
  CoverProblem problem =
      CoverProblem::from_range(points({0.0, 0.3, 0.35, 1.0}), 0.1, 0.4, 1.0);
  CoverSolution good = gapdim::optimal_cover(problem);

  CoverSolution short_len = good;
  short_len.intervals[0].right = 0.01;
  CHECK_FALSE(gapdim::verify_cover(problem, short_len).ok);
  CHECK(gapdim::verify_cover(problem, short_len).message.find("inadmissible") !=
        std::string::npos);

  CoverSolution missing = good;
  missing.intervals.pop_back();
  missing.cost -= 0.1;
  CHECK_FALSE(gapdim::verify_cover(problem, missing).ok);
  CHECK(gapdim::verify_cover(problem, missing).message.find("not covered") !=
        std::string::npos);

  CoverSolution wrong_cost = good;
  wrong_cost.cost += 0.5;
  CHECK_FALSE(gapdim::verify_cover(problem, wrong_cost).ok);
}

TEST_CASE("cover problems validate their scales") {
  IntervalSet target = points({0.5});
  CHECK_THROWS_AS(CoverProblem::from_scales(target, 0.0, 0.5, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(CoverProblem::from_scales(target, 1.5, 0.5, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(CoverProblem::from_scales(target, 0.5, 1.0, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(CoverProblem::from_scales(target, 0.5, 0.5, 1.5),
                  ValidationError);
  CHECK_THROWS_AS(CoverProblem::from_range(target, 0.4, 0.1, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(CoverProblem::from_scales(target, 1.0, 1e-15, 1.0),
                  PrecisionError);

  // refusal when the admissible scale is finer than the set's resolution
  SequenceModel seq = SequenceModel::dyadic_geometric(1.0 / 3.0);
  IntervalSet coarse = build_cantor(seq, 3);
  try {
    CoverProblem::from_scales(coarse, 1.0, 1.0 / 30.0, 1.0);
    FAIL("expected a precision refusal");
  } catch (const PrecisionError& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }

  CoverProblem derived = CoverProblem::from_range(target, 0.1, 0.4, 1.0);
  CHECK(derived.theta ==
        Catch::Approx(std::log(0.4) / std::log(0.1)).epsilon(1e-15));
  CHECK(derived.min_len == 0.1);
  CHECK(derived.max_len == 0.4);
}

TEST_CASE("both reach engines produce identical costs") {
  // the engine choice is a speed selector; every value must match bit for
  // bit because both evaluate the same candidate set with the same
  // expressions
  auto cost_with = [](const IntervalSet& set, double lo, double hi, double s,
                      gapdim::ReachEngine engine) {
    CoverProblem problem = CoverProblem::from_range(set, lo, hi, s);
    problem.reach_engine = engine;
    CoverSolver solver(problem);
    return solver.cost(s);
  };

  SECTION("randomized lattice targets") {
    std::mt19937_64 rng(414243ull);
    const double unit = std::ldexp(1.0, -14);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      std::uniform_int_distribution<int> count_d(1, 14);
      std::uniform_int_distribution<int> gap_d(1, 500);
      std::uniform_int_distribution<int> len_d(0, 30);
      int m = count_d(rng);
      std::vector<Component> comps;
      long cursor = 0;
      for (int i = 0; i < m; ++i) {
        cursor += gap_d(rng);
        long left = cursor;
        cursor += len_d(rng);
        comps.push_back({left * unit, cursor * unit});
        cursor += 1;
      }
      if (comps.back().right > 1.0) continue;
      IntervalSet set(comps, 0.0, BuildInfo{"test", "", 0, 0});
      for (double s : {0.0, 0.31, 0.78, 1.0}) {
        double tree = cost_with(set, 64 * unit, 512 * unit, s,
                                gapdim::ReachEngine::kTree);
        double env = cost_with(set, 64 * unit, 512 * unit, s,
                               gapdim::ReachEngine::kEnvelope);
        CHECK(tree == env);
        ++checked;
      }
    }
    REQUIRE(checked >= 150);
  }

  SECTION("accumulating point target") {
    SequenceModel seq = SequenceModel::power_law(2.0);
    IntervalSet set = gapdim::build_countable(seq, 3000);
    for (double s : {0.2, 1.0 / 3.0, 0.5, 0.9}) {
      double tree =
          cost_with(set, 1.0 / 3000.0, 0.02, s, gapdim::ReachEngine::kTree);
      double env = cost_with(set, 1.0 / 3000.0, 0.02, s,
                             gapdim::ReachEngine::kEnvelope);
      CHECK(tree == env);
    }
  }

  SECTION("nested interval target") {
    SequenceModel seq = SequenceModel::dyadic_geometric(1.0 / 3.0);
    IntervalSet set = gapdim::build_cantor(seq, 8);
    for (double s : {0.3, 0.6309297535714574, 1.0}) {
      double tree = cost_with(set, std::pow(3.0, -8), 1.0 / 9.0, s,
                              gapdim::ReachEngine::kTree);
      double env = cost_with(set, std::pow(3.0, -8), 1.0 / 9.0, s,
                             gapdim::ReachEngine::kEnvelope);
      CHECK(tree == env);
    }
  }
}
