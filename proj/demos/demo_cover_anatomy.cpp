// Dissects one optimal cover: builds a shallow middle-third set, solves the
// covering program at a few exponents, and shows how the optimizer trades
// many short intervals for few long ones as s falls.

#include <cstdio>

#include "gapdim/gapdim.hpp"

int main() {
  gapdim::SequenceModel seq = gapdim::SequenceModel::dyadic_geometric(1.0 / 3.0);
  gapdim::IntervalSet set = gapdim::build_cantor(seq, 7);
  double delta = 1.0 / 27.0;

  std::printf("target: %zu components, residual %.3e\n",
              set.components().size(), set.residual_bound());
  std::printf("admissible lengths at theta=0.5, delta=1/27: [%.3e, %.3e]\n\n",
              delta * delta, delta);

  gapdim::CoverProblem problem =
      gapdim::CoverProblem::from_scales(set, 0.5, delta, 1.0);
  gapdim::CoverSolver solver(problem);

  for (double s : {1.0, 0.6309297535714574, 0.3}) {
    gapdim::CoverSolution cover = solver.solve(s);
    std::printf("s = %-18.16g cost = %-22.17g intervals = %zu\n", s,
                cover.cost, cover.intervals.size());
    size_t show = cover.intervals.size() < 4 ? cover.intervals.size() : 4;
    for (size_t i = 0; i < show; ++i)
      std::printf("    [%.6f, %.6f]  len %.3e\n", cover.intervals[i].left,
                  cover.intervals[i].right,
                  cover.intervals[i].right - cover.intervals[i].left);
    if (show < cover.intervals.size())
      std::printf("    ... %zu more\n", cover.intervals.size() - show);
  }

  std::printf(
      "\nthe dimension estimate is the exponent where cost crosses 1:\n");
  gapdim::EstimateResult est =
      gapdim::estimate_set_dimension(set, 0.5, {delta});
  std::printf("s* = %.6f (middle-third value is log2/log3 = 0.630930)\n",
              est.trend);
  return 0;
}
