#pragma once

// Text format for sequence specs: one "key = value" per line, '#' comments.
// Real literals may be written as rationals ("1/3"); canonical form prints
// %.17g decimals, so parse(serialize(m)) == m and serializing again is
// byte-identical.

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gapdim/errors.hpp"
#include "gapdim/sequence.hpp"

namespace gapdim {

namespace io_detail {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline double parse_plain_real(std::string_view s, const std::string& where) {
  std::string buf(trim(s));
  const char* c = buf.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0')
    throw ValidationError(where + ": malformed number '" + buf + "'");
  if (errno == ERANGE || !std::isfinite(v))
    throw ValidationError(where + ": number out of range '" + buf + "'");
  return v;
}

// Plain decimal or rational literal "p/q".
inline double parse_real(std::string_view s, const std::string& where) {
  size_t slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain_real(s, where);
  double num = parse_plain_real(s.substr(0, slash), where);
  double den = parse_plain_real(s.substr(slash + 1), where);
  if (den == 0.0)
    throw ValidationError(where + ": rational with zero denominator");
  return num / den;
}

inline uint64_t parse_uint(std::string_view s, const std::string& where) {
  std::string buf(trim(s));
  const char* c = buf.c_str();
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(c, &end, 10);
  if (end == c || *end != '\0' || buf[0] == '-')
    throw ValidationError(where + ": expected an unsigned integer, got '" +
                          buf + "'");
  if (errno == ERANGE)
    throw ValidationError(where + ": integer out of range '" + buf + "'");
  return v;
}

inline uint64_t parse_run_count(std::string_view s, const std::string& where) {
  uint64_t v = parse_uint(s, where);
  if (v == 0 || v > (1ull << 32))
    throw ValidationError(where + ": run length must be in [1, 2^32], got " +
                          std::to_string(v));
  return v;
}

inline bool parse_bool(std::string_view s, const std::string& where) {
  std::string_view t = trim(s);
  if (t == "true") return true;
  if (t == "false") return false;
  throw ValidationError(where + ": expected true or false, got '" +
                        std::string(t) + "'");
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace io_detail

inline SequenceModel parse_sequence_spec(const std::string& text) {
  using io_detail::parse_real;
  using io_detail::trim;

  std::vector<std::pair<std::string, std::string>> kv;
  {
    size_t line_no = 0;
    for (std::string_view rest : io_detail::split(text, '\n')) {
      ++line_no;
      size_t hash = rest.find('#');
      if (hash != std::string_view::npos) rest = rest.substr(0, hash);
      std::string_view line = trim(rest);
      if (line.empty()) continue;
      size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ValidationError("sequence spec: line " +
                              std::to_string(line_no) +
                              ": expected 'key = value'");
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      if (key.empty() || value.empty())
        throw ValidationError("sequence spec: line " +
                              std::to_string(line_no) +
                              ": empty key or value");
      for (const auto& [k, v] : kv)
        if (k == key)
          throw ValidationError("sequence spec: duplicate key '" + key + "'");
      kv.emplace_back(std::move(key), std::move(value));
    }
  }

  auto lookup = [&kv](std::string_view key) -> const std::string* {
    for (const auto& [k, v] : kv)
      if (k == key) return &v;
    return nullptr;
  };
  std::vector<std::string> consumed;
  auto take = [&](std::string_view key) -> const std::string* {
    const std::string* v = lookup(key);
    if (v) consumed.emplace_back(key);
    return v;
  };
  auto require = [&](std::string_view key,
                     const std::string& family) -> const std::string& {
    const std::string* v = take(key);
    if (!v)
      throw ValidationError("sequence spec: family " + family +
                            ": missing key '" + std::string(key) + "'");
    return *v;
  };
  auto finish = [&](const std::string& family) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const auto& c : consumed) ok = ok || c == k;
      if (!ok)
        throw ValidationError("sequence spec: unknown key '" + k +
                              "' for family " + family);
    }
  };

  const std::string* fam = take("family");
  if (!fam) throw ValidationError("sequence spec: missing key 'family'");

  if (*fam == "power_law") {
    double p = parse_real(require("p", *fam), "key p");
    finish(*fam);
    return SequenceModel::power_law(p);
  }
  if (*fam == "dyadic_geometric") {
    double tau = parse_real(require("tau", *fam), "key tau");
    finish(*fam);
    return SequenceModel::dyadic_geometric(tau);
  }
  if (*fam == "dyadic_schedule") {
    const std::string& sched = require("schedule", *fam);
    std::vector<ScheduleEntry> entries;
    for (std::string_view piece : io_detail::split(sched, ',')) {
      // split on the last 'x' so exotic literals inside tau stay intact
      size_t x = piece.rfind('x');
      if (x == std::string_view::npos || trim(piece.substr(0, x)).empty())
        throw ValidationError(
            "sequence spec: schedule entry '" + std::string(trim(piece)) +
            "': expected 'tau x run_length'");
      ScheduleEntry e;
      e.tau = parse_real(piece.substr(0, x), "schedule tau");
      e.run_length = static_cast<uint32_t>(io_detail::parse_run_count(
          piece.substr(x + 1), "schedule run length"));
      entries.push_back(e);
    }
    finish(*fam);
    return SequenceModel::dyadic_schedule(std::move(entries));
  }
  if (*fam == "explicit") {
    const std::string& terms_text = require("terms", *fam);
    std::vector<double> terms;
    for (std::string_view piece : io_detail::split(terms_text, ','))
      terms.push_back(parse_real(piece, "key terms"));
    double q = 0.0;
    if (const std::string* v = take("tail_ratio"))
      q = parse_real(*v, "key tail_ratio");
    bool normalize = false;
    if (const std::string* v = take("normalize"))
      normalize = io_detail::parse_bool(*v, "key normalize");
    finish(*fam);
    return SequenceModel::explicit_finite(std::move(terms), q, normalize);
  }
  throw ValidationError("sequence spec: unknown family '" + *fam + "'");
}

inline std::string serialize_sequence_spec(const SequenceModel& m) {
  using io_detail::format_real;
  std::string out = "family = ";
  switch (m.family()) {
    case SequenceFamily::kPowerLaw:
      out += "power_law\np = " + format_real(m.power_exponent()) + "\n";
      break;
    case SequenceFamily::kDyadicGeometric:
      out += "dyadic_geometric\ntau = " + format_real(m.geometric_ratio()) +
             "\n";
      break;
    case SequenceFamily::kDyadicSchedule: {
      out += "dyadic_schedule\nschedule = ";
      bool first = true;
      for (const ScheduleEntry& e : m.schedule()) {
        if (!first) out += ", ";
        first = false;
        out += format_real(e.tau) + " x " + std::to_string(e.run_length);
      }
      out += "\n";
      break;
    }
    case SequenceFamily::kExplicit: {
      out += "explicit\nterms = ";
      bool first = true;
      for (double t : m.explicit_terms()) {
        if (!first) out += ", ";
        first = false;
        out += format_real(t);
      }
      out += "\ntail_ratio = " + format_real(m.explicit_tail_ratio());
      out += "\nnormalize = ";
      out += m.normalize_requested() ? "true" : "false";
      out += "\n";
      break;
    }
  }
  return out;
}

inline SequenceModel load_sequence_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open sequence spec '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sequence_spec(ss.str());
}

inline void save_sequence_spec(const SequenceModel& m,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw ValidationError("cannot open '" + path + "' for writing");
  out << serialize_sequence_spec(m);
  out.flush();
  if (!out) throw ValidationError("write failed for '" + path + "'");
}

}  // namespace gapdim
