// Prints the attainable upper-dimension range as theta sweeps (0, 1] for two
// gap families: the endpoints trace the curves that make the intermediate
// spectrum interesting (countable side moves, Cantor side barely does).

#include <cstdio>

#include "gapdim/gapdim.hpp"

namespace {

void print_curve(const char* label, const gapdim::SequenceModel& seq) {
  std::printf("%s\n", label);
  std::printf("  %-7s %-22s %-22s\n", "theta", "upper_countable",
              "upper_cantor");
  for (int i = 1; i <= 10; ++i) {
    double theta = i / 10.0;
    gapdim::ThetaRange r = gapdim::range_for_theta(seq, theta);
    std::printf("  %-7.2f %-22.15f %-22.15f\n", theta, r.upper_countable,
                r.upper_cantor);
  }
  std::printf("\n");
}

}  // namespace

int main() {
  print_curve("x_n = 1/n (gaps 1/(n(n+1)))",
              gapdim::SequenceModel::power_law(2.0));
  print_curve("middle-third Cantor gaps (tau = 1/3)",
              gapdim::SequenceModel::dyadic_geometric(1.0 / 3.0));

  std::printf(
      "The countable set's upper dimension climbs with theta toward the\n"
      "box dimension, while the Cantor set holds its value; every target\n"
      "between the two curves is attained by a rearranged mixed set.\n");
  return 0;
}
