#pragma once

// Finite-window limit diagnostics. A report never extrapolates: `value` is
// the extreme of the trailing half of the sampled window, the proxies are
// that half's min and max, and an unsettled window is flagged, not smoothed.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "gapdim/errors.hpp"

namespace gapdim {

enum class DimensionKind {
  kBoxLower,
  kBoxUpper,
  kBoxLowerAForm,
  kHausdorffCantor,
  kAssouad,
  kAssouadLower,
  kIntermCantorUpper,
  kIntermCountableUpper,
  kIntermCountableLower,
};

inline const char* dimension_kind_name(DimensionKind kind) {
  switch (kind) {
    case DimensionKind::kBoxLower:
      return "box_lower";
    case DimensionKind::kBoxUpper:
      return "box_upper";
    case DimensionKind::kBoxLowerAForm:
      return "box_lower_a_form";
    case DimensionKind::kHausdorffCantor:
      return "hausdorff_cantor";
    case DimensionKind::kAssouad:
      return "assouad";
    case DimensionKind::kAssouadLower:
      return "assouad_lower";
    case DimensionKind::kIntermCantorUpper:
      return "interm_cantor_upper";
    case DimensionKind::kIntermCountableUpper:
      return "interm_countable_upper";
    case DimensionKind::kIntermCountableLower:
      return "interm_countable_lower";
  }
  return "unknown";
}

enum class LimitMode { kLimInf, kLimSup };

struct DimensionReport {
  DimensionKind kind = DimensionKind::kBoxLower;
  double value = 0.0;
  uint64_t window_lo = 0;
  uint64_t window_hi = 0;
  std::vector<uint64_t> window_indices;  // sampled points, ascending
  std::vector<double> window_values;     // the sequence being extremized
  double proxy_min = 0.0;                // extremes over the trailing half
  double proxy_max = 0.0;
  std::string caveat;                    // empty when the window is settled
};

namespace report_detail {

// spread above which a window is reported as unsettled
inline constexpr double kSpreadCaveat = 0.02;

inline DimensionReport summarize_window(DimensionKind kind, LimitMode mode,
                                        std::vector<uint64_t> indices,
                                        std::vector<double> values,
                                        uint64_t window_lo, uint64_t window_hi,
                                        std::string caveat = "") {
  if (indices.empty() || indices.size() != values.size())
    throw ValidationError("dimension report: empty or mismatched window");
  DimensionReport rep;
  rep.kind = kind;
  rep.window_lo = window_lo;
  rep.window_hi = window_hi;
  size_t half = indices.size() / 2;
  double vmin = values[half], vmax = values[half];
  for (size_t i = half; i < values.size(); ++i) {
    vmin = std::min(vmin, values[i]);
    vmax = std::max(vmax, values[i]);
  }
  rep.value = mode == LimitMode::kLimInf ? vmin : vmax;
  rep.proxy_min = vmin;
  rep.proxy_max = vmax;
  rep.caveat = std::move(caveat);
  if (vmax - vmin > kSpreadCaveat) {
    std::ostringstream note;
    note.precision(3);
    note << "window spread " << (vmax - vmin)
         << " over trailing half; limit not settled";
    if (!rep.caveat.empty()) rep.caveat += "; ";
    rep.caveat += note.str();
  }
  rep.window_indices = std::move(indices);
  rep.window_values = std::move(values);
  return rep;
}

}  // namespace report_detail

}  // namespace gapdim
