#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gapdim/builders.hpp"
#include "gapdim/estimator.hpp"

using gapdim::BuildInfo;
using gapdim::CoverProblem;
using gapdim::CoverSolver;
using gapdim::EstimateResult;
using gapdim::IntervalSet;
using gapdim::PrecisionError;
using gapdim::ResolutionPolicy;
using gapdim::SequenceModel;
using gapdim::SetRecipe;
using gapdim::ValidationError;

namespace {

constexpr double kLog2Log3 = 0.6309297535714574;

SequenceModel middle_third() {
  return SequenceModel::dyadic_geometric(1.0 / 3.0);
}

double p3(int k) { return std::pow(3.0, -k); }

}  // namespace

TEST_CASE("solid interval estimates dimension one") {
  IntervalSet unit({{0.0, 1.0}}, 0.0, BuildInfo{"test", "", 0, 0});
  for (double theta : {1.0, 0.5}) {
    EstimateResult result = gapdim::estimate_set_dimension(
        unit, theta, {0.25, 1.0 / 16.0, 1.0 / 64.0});
    REQUIRE(result.rows.size() == 3);
    for (const auto& row : result.rows) {
      CHECK(row.s_star == 1.0);  // total length of any cover is at least 1
      CHECK(row.cost_at_s_star >= 1.0);
      CHECK(row.components == 1);
    }
    CHECK(result.trend == 1.0);
  }
}

TEST_CASE("middle-third ladder lands on the self-similar exponent") {
  SetRecipe recipe = SetRecipe::cantor(middle_third());
  std::vector<double> ladder = {p3(4), p3(5), p3(6), p3(7)};
  EstimateResult result = gapdim::estimate_dimension(recipe, 1.0, ladder);
  REQUIRE(result.rows.size() == 4);
  CHECK(result.rows.back().components == 128);
  for (const auto& row : result.rows) {
    // every rung is block-aligned, so the crossing sits at the exact value
    // up to the bisection bracket width
    CHECK(row.s_star == Catch::Approx(kLog2Log3).margin(5e-4));
    CHECK(row.cost_at_s_star == Catch::Approx(1.0).margin(0.01));
  }
  CHECK(result.trend > 0.58);
  CHECK(result.trend < 0.68);
}

TEST_CASE("bisection brackets the cost crossing") {
  IntervalSet set = build_cantor(middle_third(), 7);
  for (double theta : {0.6, 0.8, 1.0}) {
    EstimateResult result =
        gapdim::estimate_set_dimension(set, theta, {p3(4)});
    double s = result.rows[0].s_star;
    REQUIRE(s > 0.0);
    REQUIRE(s < 1.0);
    CoverSolver solver(CoverProblem::from_scales(set, theta, p3(4), 1.0));
    CHECK(solver.cost(s - 0.01) > 1.0);
    CHECK(solver.cost(s + 0.01) < 1.0);
  }
}

TEST_CASE("isolated point family trends downward with resolution") {
  SetRecipe recipe = SetRecipe::countable(SequenceModel::power_law(2.0));
  // rungs chosen so the finest admissible scale steps through 1e-2, 1e-3
  std::vector<double> ladder = {std::pow(1e-2, 0.5), std::pow(1e-3, 0.5)};
  EstimateResult result = gapdim::estimate_dimension(recipe, 0.5, ladder);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].components == 100);  // tail 1/(M+1) <= 1e-2
  CHECK(result.rows[1].components >= 999);
  CHECK(result.rows[1].components <= 1001);
  CHECK(result.rows[1].s_star < result.rows[0].s_star);
  CHECK(result.trend > 0.30);
  CHECK(result.trend < 0.50);
}

TEST_CASE("prebuilt sets give the same crossing as recipes") {
  IntervalSet set = build_cantor(middle_third(), 7);
  EstimateResult direct = gapdim::estimate_set_dimension(set, 1.0, {p3(7)});
  EstimateResult recipe = gapdim::estimate_dimension(
      SetRecipe::cantor(middle_third()), 1.0, {p3(7)});
  CHECK(direct.rows[0].s_star == recipe.rows[0].s_star);
  CHECK(direct.rows[0].cost_at_s_star == recipe.rows[0].cost_at_s_star);
  CHECK(direct.rows[0].components == recipe.rows[0].components);
}

TEST_CASE("estimates are bit-stable across runs") {
  SetRecipe recipe = SetRecipe::cantor(middle_third());
  EstimateResult a = gapdim::estimate_dimension(recipe, 0.7, {p3(5)});
  EstimateResult b = gapdim::estimate_dimension(recipe, 0.7, {p3(5)});
  CHECK(a.rows[0].s_star == b.rows[0].s_star);
  CHECK(a.rows[0].cost_at_s_star == b.rows[0].cost_at_s_star);
  CHECK(a.rows[0].components == b.rows[0].components);
}

TEST_CASE("estimator refuses unresolvable ladders") {
  SetRecipe cantor = SetRecipe::cantor(middle_third());
  SetRecipe countable = SetRecipe::countable(SequenceModel::power_law(2.0));

  // theta = 0.2 pushes the finest scale to 3^-35, past the depth cap
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 0.2, {p3(7)}),
                  PrecisionError);
  // 1e-8 needs a hundred million points, past the count cap
  CHECK_THROWS_AS(gapdim::estimate_dimension(countable, 1.0, {1e-8}),
                  PrecisionError);
  // below the hard resolution floor
  CHECK_THROWS_AS(gapdim::estimate_dimension(countable, 1.0, {1e-14}),
                  PrecisionError);

  ResolutionPolicy tight;
  tight.max_depth = 5;
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 1.0, {p3(7)}, tight),
                  PrecisionError);
  ResolutionPolicy coarse;
  coarse.min_len = 1e-3;
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 1.0, {1e-4}, coarse),
                  PrecisionError);

  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 1.0, {}),
                  ValidationError);
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 1.0, {0.1, 0.1}),
                  ValidationError);
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 1.0, {0.1, 0.2}),
                  ValidationError);
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 0.0, {0.1}),
                  ValidationError);
  CHECK_THROWS_AS(gapdim::estimate_dimension(cantor, 1.0, {1.5}),
                  ValidationError);
}
