#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gapdim/builders.hpp"
#include "gapdim/construction.hpp"
#include "gapdim/dimensions.hpp"

using gapdim::BuildInfo;
using gapdim::Component;
using gapdim::ConstructionPlan;
using gapdim::GapAudit;
using gapdim::InfeasibleError;
using gapdim::IntervalSet;
using gapdim::PrecisionError;
using gapdim::ScheduleEntry;
using gapdim::SequenceModel;
using gapdim::ValidationError;

namespace {

SequenceModel inverse_square() { return SequenceModel::power_law(2.0); }

SequenceModel middle_third() {
  return SequenceModel::dyadic_geometric(1.0 / 3.0);
}

}  // namespace

TEST_CASE("quarter target plan has exponent two") {
  SequenceModel seq = inverse_square();
  ConstructionPlan plan = gapdim::plan_construction(seq, 0.5, 0.25);
  CHECK(plan.upper_cantor == 0.5);
  CHECK(plan.s_exponent == 2.0);
  CHECK_FALSE(plan.note.empty());  // 1/4 sits below the countable endpoint

  REQUIRE(plan.j_map.size() == plan.blocks.size());
  REQUIRE(plan.blocks.size() >= 20);
  CHECK(plan.j_map[0] == 0);
  CHECK(plan.blocks[0].start == 2);
  CHECK(plan.blocks[0].count == 1);

  // bracketing oracle: verify the defining inequalities directly and the
  // known growth rate j(n) = 2n + O(1) for this family
  for (uint32_t n = 1; n < 20; ++n) {
    uint32_t j = plan.j_map[n];
    double ts = std::pow(seq.term(uint64_t{1} << n), 2.0);
    CHECK(seq.term(uint64_t{1} << (j + 1)) < ts * (1.0 + 1e-9));
    CHECK(ts <= seq.term(uint64_t{1} << j) * (1.0 + 1e-9));
    CHECK(j >= n);
    CHECK(std::abs(static_cast<long>(j) - 2l * n) <= 1);
  }

  // consumed blocks partition cleanly: strictly ascending, disjoint, sized
  for (size_t k = 1; k < plan.blocks.size(); ++k) {
    CHECK(plan.blocks[k].count == (uint64_t{1} << k));
    CHECK(plan.blocks[k].start >=
          plan.blocks[k - 1].start + plan.blocks[k - 1].count);
  }

  // block masses against direct summation at shallow levels
  for (size_t k = 1; k <= 10; ++k) {
    double direct = 0.0;
    for (uint64_t i = 0; i < plan.blocks[k].count; ++i)
      direct += seq.term(plan.blocks[k].start + i);
    CHECK(plan.block_mass[k] == Catch::Approx(direct).epsilon(1e-12));
  }

  double forward = 0.0;
  for (double mass : plan.block_mass) forward += mass;
  CHECK(plan.split_r == Catch::Approx(forward).epsilon(1e-13));
  CHECK(plan.split_r > 0.0);
  CHECK(plan.split_r < 1.0);

  ConstructionPlan again = gapdim::plan_construction(seq, 0.5, 0.25);
  CHECK(again.j_map == plan.j_map);
  CHECK(again.split_r == plan.split_r);
}

TEST_CASE("plan exponent tracks the target") {
  SequenceModel seq = inverse_square();
  ConstructionPlan plan = gapdim::plan_construction(seq, 0.5, 0.42);
  CHECK(plan.s_exponent == Catch::Approx(0.5 / 0.42).epsilon(1e-12));
  CHECK(plan.note.empty());  // 0.42 exceeds the countable endpoint 1/3
  CHECK(plan.upper_countable == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

  // a higher target consumes shallower, heavier terms
  ConstructionPlan low = gapdim::plan_construction(seq, 0.5, 0.25);
  ConstructionPlan high = gapdim::plan_construction(seq, 0.5, 0.45);
  CHECK(high.split_r > low.split_r);
}

TEST_CASE("alternating schedule stalls the bracket") {
  SequenceModel seq = SequenceModel::dyadic_schedule(
      {ScheduleEntry{1.0 / 3.0, 8}, ScheduleEntry{1.0 / 5.0, 8}});
  double uc = gapdim::interm_cantor_upper(seq, 0.5).value;
  ConstructionPlan plan = gapdim::plan_construction(seq, 0.5, uc / 1.3);

  // the target log decays unevenly across the two run phases, so the
  // bracket index must repeat somewhere (exercising the offset rule)
  bool stalled = false;
  for (size_t k = 2; k < plan.j_map.size(); ++k)
    if (plan.j_map[k] == plan.j_map[k - 1]) stalled = true;
  CHECK(stalled);
  for (size_t k = 1; k < plan.blocks.size(); ++k)
    CHECK(plan.blocks[k].start >=
          plan.blocks[k - 1].start + plan.blocks[k - 1].count);
}

TEST_CASE("unattainable targets are refused") {
  SequenceModel seq = inverse_square();
  CHECK_THROWS_AS(gapdim::plan_construction(seq, 0.5, 0.5), InfeasibleError);
  CHECK_THROWS_AS(gapdim::plan_construction(seq, 0.5, 0.6), InfeasibleError);
  CHECK_THROWS_AS(gapdim::plan_construction(seq, 0.5, 0.0), InfeasibleError);
  CHECK_THROWS_AS(gapdim::plan_construction(seq, 0.5, -0.3), InfeasibleError);
  CHECK_THROWS_AS(gapdim::plan_construction(seq, 0.0, 0.25), ValidationError);
  CHECK_THROWS_AS(gapdim::plan_construction(seq, 1.5, 0.25), ValidationError);

  // a finite sequence resolves too few levels to witness the hypothesis
  SequenceModel finite =
      SequenceModel::explicit_finite({0.5, 0.25, 0.125}, 0.5, false);
  CHECK_THROWS_AS(gapdim::plan_construction(finite, 0.5, 0.25),
                  ValidationError);
}

TEST_CASE("mixed build glues the two parts") {
  SequenceModel seq = inverse_square();
  ConstructionPlan plan = gapdim::plan_construction(seq, 0.5, 0.25);
  IntervalSet set = gapdim::build_mixed(plan, 6, 1000);

  const auto& comps = set.components();
  REQUIRE(comps.size() == 64 + 1000);
  CHECK(comps.front().left == 0.0);
  CHECK(comps.back().right == 1.0);

  // the 64th component bridges the split point; everything after is a point
  CHECK(comps[63].left < plan.split_r);
  CHECK(comps[63].right > plan.split_r);
  for (size_t i = 64; i < comps.size(); ++i) {
    CHECK(comps[i].length() == 0.0);
    CHECK(comps[i].left > plan.split_r);
  }
  for (const Component& c : comps)
    CHECK(c.length() <= set.residual_bound());

  GapAudit gaps = gapdim::verify_gaps(set, seq, 100);
  CHECK(gaps.ok);
  CHECK(gaps.checked == 100);
  CHECK(gaps.message.empty());

  IntervalSet again = gapdim::build_mixed(plan, 6, 1000);
  REQUIRE(again.components().size() == comps.size());
  for (size_t i = 0; i < comps.size(); i += 97) {
    CHECK(again.components()[i].left == comps[i].left);
    CHECK(again.components()[i].right == comps[i].right);
  }
}

TEST_CASE("mixed gaps match the source multiset") {
  SequenceModel seq = inverse_square();
  ConstructionPlan plan = gapdim::plan_construction(seq, 0.5, 0.42);
  IntervalSet set = gapdim::build_mixed(plan, 8, 2000);
  CHECK(gapdim::verify_gaps(set, seq, 100).ok);

  // nudging one point reshapes its two gaps, which must surface
  std::vector<Component> bent(set.components().begin(),
                              set.components().end());
  size_t shallow = bent.size() - 2;  // owns one of the widest gaps
  bent[shallow].left += 3e-9;
  bent[shallow].right = bent[shallow].left;
  IntervalSet broken(std::move(bent), set.residual_bound(),
                     BuildInfo{"test", "", 0, 0});
  GapAudit check = gapdim::verify_gaps(broken, seq, 100);
  CHECK_FALSE(check.ok);
  CHECK(check.gap_rank >= 1);
  CHECK(check.message.find("no sequence term match") != std::string::npos);
}

TEST_CASE("gap checks on the simple builders") {
  IntervalSet cantor = build_cantor(middle_third(), 3);
  CHECK(gapdim::verify_gaps(cantor, middle_third(), 7).ok);
  CHECK(gapdim::verify_gaps(cantor, middle_third(), 50).ok);  // all 7 gaps

  IntervalSet countable = build_countable(inverse_square(), 5);
  CHECK(gapdim::verify_gaps(countable, inverse_square(), 4).ok);

  // gaps of the middle-third set do not embed into the inverse-square terms
  GapAudit cross = gapdim::verify_gaps(cantor, inverse_square(), 3);
  CHECK_FALSE(cross.ok);
  CHECK(cross.gap_rank == 1);
  CHECK(cross.gap_length == Catch::Approx(1.0 / 3.0));
}

TEST_CASE("mixed build refuses out-of-range requests") {
  SequenceModel seq = inverse_square();
  ConstructionPlan plan = gapdim::plan_construction(seq, 0.5, 0.25);
  CHECK_THROWS_AS(gapdim::build_mixed(plan, 0, 100), ValidationError);
  CHECK_THROWS_AS(gapdim::build_mixed(plan, 25, 100), PrecisionError);
  CHECK_THROWS_AS(gapdim::build_mixed(plan, 6, 0), ValidationError);
  CHECK_THROWS_AS(gapdim::build_mixed(plan, 6, (uint64_t{1} << 26) + 1),
                  ValidationError);
}
