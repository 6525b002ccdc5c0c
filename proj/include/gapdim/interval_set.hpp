#pragma once

// Finite-precision realizations of complementary sets: a sorted list of
// disjoint closed components in [0,1] plus a residual bound on unresolved
// structure. Gap audits match complement gaps against sequence terms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gapdim/errors.hpp"
#include "gapdim/sequence.hpp"
#include "gapdim/sequence_io.hpp"

namespace gapdim {

struct Component {
  double left = 0.0;
  double right = 0.0;

  double length() const { return right - left; }
  bool is_point() const { return right == left; }

  friend bool operator==(const Component&, const Component&) = default;
};

// Dump-header metadata; free-form but canonical per builder.
struct BuildInfo {
  std::string builder;     // "cantor", "countable", "mixed", "parsed", ...
  std::string parameters;  // one-line summary, e.g. the sequence spec
  uint64_t depth = 0;      // Cantor recursion depth, 0 when not applicable
  uint64_t count = 0;      // countable point count, 0 when not applicable

  friend bool operator==(const BuildInfo&, const BuildInfo&) = default;
};

class IntervalSet {
 public:
  // Components must be sorted and strictly disjoint (touching components
  // must be merged by the builder; a closed set has no zero-width gaps).
  IntervalSet(std::vector<Component> components, double residual_bound,
              BuildInfo info)
      : components_(std::move(components)),
        residual_bound_(residual_bound),
        info_(std::move(info)) {
    if (components_.empty())
      throw ValidationError("interval set: no components");
    for (size_t i = 0; i < components_.size(); ++i) {
      const Component& c = components_[i];
      if (!(0.0 <= c.left) || !(c.left <= c.right) || !(c.right <= 1.0))
        throw ValidationError("interval set: component " + std::to_string(i) +
                              " is not a closed interval inside [0,1]");
      if (i > 0 && !(components_[i - 1].right < c.left))
        throw ValidationError("interval set: components " +
                              std::to_string(i - 1) + " and " +
                              std::to_string(i) + " are not strictly sorted");
    }
    if (!(residual_bound_ >= 0.0) || !(residual_bound_ <= 1.0))
      throw ValidationError("interval set: residual bound outside [0,1]");
  }

  const std::vector<Component>& components() const { return components_; }
  double residual_bound() const { return residual_bound_; }
  const BuildInfo& info() const { return info_; }

  double total_length() const {
    double sum = 0.0, comp = 0.0;
    for (const Component& c : components_) {
      double y = c.length() - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    return sum;
  }

  // Open gaps of [0,1] minus the set, left to right, zero-width omitted.
  std::vector<double> complement_gaps() const {
    std::vector<double> gaps;
    if (components_.front().left > 0.0) gaps.push_back(components_.front().left);
    for (size_t i = 1; i < components_.size(); ++i) {
      double g = components_[i].left - components_[i - 1].right;
      if (g > 0.0) gaps.push_back(g);
    }
    if (components_.back().right < 1.0)
      gaps.push_back(1.0 - components_.back().right);
    return gaps;
  }

 private:
  std::vector<Component> components_;
  double residual_bound_ = 0.0;
  BuildInfo info_;
};

struct GapAudit {
  bool ok = true;
  size_t checked = 0;        // gaps actually audited (clamped to available)
  size_t gap_rank = 0;       // 1-based rank of first unmatched gap (0 if ok)
  double gap_length = 0.0;   // its length
  uint64_t stop_index = 0;   // sequence index where matching stopped
  std::string message;       // empty when ok
};

// Checks that the n largest complement gaps are a sub-multiset of the
// sequence terms, each within 1e-10 relative. Greedy descending match is
// exact here because both lists are non-increasing.
inline GapAudit verify_gaps(const IntervalSet& set, const SequenceModel& seq,
                            size_t n_gaps) {
  constexpr double kRelTol = 1e-10;
  std::vector<double> gaps = set.complement_gaps();
  std::sort(gaps.begin(), gaps.end(), std::greater<double>());
  GapAudit audit;
  audit.checked = std::min(n_gaps, gaps.size());

  uint64_t m = 1;
  const uint64_t m_max = seq.max_index();
  for (size_t i = 0; i < audit.checked; ++i) {
    double g = gaps[i];
    auto matches = [&](double a) {
      return std::abs(a - g) <= kRelTol * std::max(a, g);
    };
    while (m <= m_max && seq.term(m) > g && !matches(seq.term(m))) ++m;
    if (m > m_max || !matches(seq.term(m))) {
      audit.ok = false;
      audit.gap_rank = i + 1;
      audit.gap_length = g;
      audit.stop_index = m;
      std::ostringstream msg;
      msg.precision(17);
      msg << "gap rank " << audit.gap_rank << " (length " << g
          << ") has no sequence term match; matching stopped at index " << m;
      if (m <= m_max) msg << " (term " << seq.term(m) << ")";
      audit.message = msg.str();
      return audit;
    }
    audit.stop_index = m;
    ++m;  // each term is consumable once
  }
  return audit;
}

inline std::string dump_interval_set(const IntervalSet& set) {
  std::string out;
  out += "# builder = " + set.info().builder + "\n";
  out += "# parameters = " + set.info().parameters + "\n";
  out += "# depth = " + std::to_string(set.info().depth) + "\n";
  out += "# count = " + std::to_string(set.info().count) + "\n";
  out += "# residual_bound = " + io_detail::format_real(set.residual_bound()) +
         "\n";
  for (const Component& c : set.components())
    out += io_detail::format_real(c.left) + " " +
           io_detail::format_real(c.right) + "\n";
  return out;
}

inline IntervalSet parse_interval_set(const std::string& text) {
  using io_detail::trim;
  std::vector<Component> comps;
  BuildInfo info;
  info.builder = "parsed";
  double residual = -1.0;
  size_t line_no = 0;
  for (std::string_view raw : io_detail::split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = trim(line.substr(1));
      size_t eq = body.find('=');
      if (eq == std::string_view::npos)
        throw ValidationError("set dump: line " + std::to_string(line_no) +
                              ": header without '='");
      std::string key(trim(body.substr(0, eq)));
      std::string value(trim(body.substr(eq + 1)));
      if (key == "builder")
        info.builder = value;
      else if (key == "parameters")
        info.parameters = value;
      else if (key == "depth")
        info.depth = io_detail::parse_uint(value, "set dump depth");
      else if (key == "count")
        info.count = io_detail::parse_uint(value, "set dump count");
      else if (key == "residual_bound")
        residual = io_detail::parse_plain_real(value, "set dump residual");
      else
        throw ValidationError("set dump: unknown header key '" + key + "'");
      continue;
    }
    size_t space = line.find(' ');
    if (space == std::string_view::npos)
      throw ValidationError("set dump: line " + std::to_string(line_no) +
                            ": expected 'left right'");
    Component c;
    c.left = io_detail::parse_plain_real(line.substr(0, space),
                                         "set dump component");
    std::string_view rest = trim(line.substr(space + 1));
    if (rest.find(' ') != std::string_view::npos)
      throw ValidationError("set dump: line " + std::to_string(line_no) +
                            ": expected exactly two numbers");
    c.right = io_detail::parse_plain_real(rest, "set dump component");
    comps.push_back(c);
  }
  if (residual < 0.0) {
    // conservative default: no component hides structure wider than itself
    for (const Component& c : comps)
      residual = std::max(residual, c.length());
    residual = std::max(residual, 0.0);
  }
  return IntervalSet(std::move(comps), residual, std::move(info));
}

inline IntervalSet load_interval_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open set dump '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_interval_set(ss.str());
}

inline void save_interval_set(const IntervalSet& set,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << dump_interval_set(set);
  out.flush();
  if (!out) throw ValidationError("write failed for '" + path + "'");
}

}  // namespace gapdim
