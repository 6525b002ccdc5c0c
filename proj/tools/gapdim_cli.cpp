// gapdim: command-line front end over the library. Emits plot-ready CSV
// (or the same records as JSON lines) plus plain-text set dumps. Output is
// byte-deterministic for a fixed config: the timestamp header is the only
// run-dependent line and --no-timestamp removes it (and zeroes runtime_ms,
// the one measured column).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "gapdim/gapdim.hpp"

namespace {

using gapdim::io_detail::format_real;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// All tabular output funnels through here: one header + string-valued rows.
// CSV quotes only when needed; json-lines repeats the columns as keys.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_table(std::ostream& os, const Table& t, bool json_lines) {
  if (json_lines) {
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj;
      for (size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
      os << obj.dump() << '\n';
    }
    return;
  }
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
}

struct Options {
  std::string seq_path;
  std::string theta_text;
  double t_target = 0.0;
  bool has_target = false;
  uint32_t depth = 8;
  uint64_t count = 2000;
  std::string deltas_text;
  std::string out_path;
  std::string format = "csv";
  bool no_timestamp = false;
  uint32_t threads = 1;
  std::string kind = "cantor";
  uint64_t gaps = 100;
};

std::vector<double> parse_grid(const std::string& text, const char* what) {
  std::vector<double> out;
  for (std::string_view piece : gapdim::io_detail::split(text, ','))
    out.push_back(gapdim::io_detail::parse_real(piece, what));
  if (out.empty())
    throw gapdim::ValidationError(std::string(what) + ": empty list");
  return out;
}

std::vector<double> theta_grid(const Options& opt) {
  if (opt.theta_text.empty()) return {0.25, 0.5, 0.75, 1.0};
  std::vector<double> grid = parse_grid(opt.theta_text, "--theta");
  std::sort(grid.begin(), grid.end());
  return grid;
}

double theta_single(const Options& opt) {
  std::vector<double> grid = theta_grid(opt);
  if (grid.size() != 1)
    throw gapdim::ValidationError(
        "this command takes a single --theta value, not a grid");
  return grid.front();
}

struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  bool json = false;

  Sink(const Options& opt, const char* command) {
    if (!opt.out_path.empty()) {
      file.open(opt.out_path);
      if (!file)
        throw gapdim::ValidationError("cannot open output file '" +
                                      opt.out_path + "'");
      os = &file;
    }
    json = opt.format == "json-lines";
    if (!json) *os << "# gapdim " << command << '\n';
    if (!opt.no_timestamp) {
      if (json)
        *os << nlohmann::ordered_json{{"generated", utc_now()}}.dump() << '\n';
      else
        *os << "# generated = " << utc_now() << '\n';
    }
  }
};

std::string spec_line(const gapdim::SequenceModel& seq) {
  return gapdim::build_detail::flatten_spec(seq);
}

void run_validate(const Options& opt) {
  gapdim::SequenceModel seq = gapdim::load_sequence_spec(opt.seq_path);
  uint64_t max_level = seq.max_pow2_level();
  uint32_t hi =
      static_cast<uint32_t>(std::min<uint64_t>(64, max_level > 1 ? max_level - 1 : 1));
  gapdim::HypothesisReport rep = seq.hypothesis_report(1, hi);

  Sink sink(opt, "validate");
  Table t;
  t.columns = {"key", "value"};
  t.add({"spec", spec_line(seq)});
  t.add({"max_index", std::to_string(seq.max_index())});
  t.add({"max_pow2_level", std::to_string(max_level)});
  t.add({"window_lo", std::to_string(rep.window_lo)});
  t.add({"window_hi", std::to_string(rep.window_hi)});
  t.add({"inf_ratio", format_real(rep.inf_ratio)});
  t.add({"sup_ratio", format_real(rep.sup_ratio)});
  t.add({"nth_root_start", format_real(rep.nth_root_start)});
  t.add({"nth_root_trend", format_real(rep.nth_root_trend)});
  t.add({"doubling_constant", format_real(rep.doubling_constant)});
  write_table(*sink.os, t, sink.json);
}

void report_row(Table& t, const gapdim::DimensionReport& rep,
                const std::string& theta) {
  t.add({gapdim::dimension_kind_name(rep.kind), theta, format_real(rep.value),
         std::to_string(rep.window_lo), std::to_string(rep.window_hi),
         format_real(rep.proxy_min), format_real(rep.proxy_max), rep.caveat});
}

void run_dims(const Options& opt) {
  gapdim::SequenceModel seq = gapdim::load_sequence_spec(opt.seq_path);
  std::vector<double> grid = theta_grid(opt);

  gapdim::BoxDims box = gapdim::box_dims(seq);
  gapdim::AssouadPair ap = gapdim::assouad_pair(seq);
  gapdim::DimensionReport haus = gapdim::hausdorff_cantor(seq);

  Sink sink(opt, "dims");
  Table t;
  t.columns = {"quantity",  "theta",     "value", "window_lo",
               "window_hi", "proxy_min", "proxy_max", "caveat"};
  report_row(t, box.lower, "");
  report_row(t, box.upper, "");
  report_row(t, box.a_form_lower, "");
  report_row(t, haus, "");
  report_row(t, ap.assouad, "");
  report_row(t, ap.assouad_lower, "");
  for (double theta : grid) {
    std::string th = format_real(theta);
    report_row(t, gapdim::interm_cantor_upper(seq, theta), th);
    gapdim::IntermCountable ic = gapdim::interm_countable(seq, theta);
    report_row(t, ic.upper, th);
    report_row(t, ic.lower, th);
  }
  write_table(*sink.os, t, sink.json);
}

void run_sweep_theta(const Options& opt) {
  gapdim::SequenceModel seq = gapdim::load_sequence_spec(opt.seq_path);
  std::vector<double> grid = theta_grid(opt);

  Sink sink(opt, "sweep-theta");
  Table t;
  t.columns = {"theta", "lower_countable", "lower_cantor", "upper_countable",
               "upper_cantor"};
  for (double theta : grid) {
    gapdim::ThetaRange r = gapdim::range_for_theta(seq, theta);
    t.add({format_real(theta), format_real(r.lower_countable),
           format_real(r.lower_cantor), format_real(r.upper_countable),
           format_real(r.upper_cantor)});
  }
  write_table(*sink.os, t, sink.json);
}

Table estimate_table(const std::vector<gapdim::EstimateRow>& rows,
                     bool zero_runtime) {
  Table t;
  t.columns = {"theta",          "delta",      "s_star",
               "cost_at_s_star", "components", "runtime_ms"};
  for (const gapdim::EstimateRow& r : rows)
    t.add({format_real(r.theta), format_real(r.delta), format_real(r.s_star),
           format_real(r.cost_at_s_star), std::to_string(r.components),
           format_real(zero_runtime ? 0.0 : r.runtime_ms)});
  return t;
}

void run_cover_estimate(const Options& opt) {
  gapdim::SequenceModel seq = gapdim::load_sequence_spec(opt.seq_path);
  if (opt.deltas_text.empty())
    throw gapdim::ValidationError("cover-estimate requires --deltas");
  std::vector<double> ladder = parse_grid(opt.deltas_text, "--deltas");
  std::vector<double> grid = theta_grid(opt);

  gapdim::SetRecipe recipe =
      opt.kind == "countable" ? gapdim::SetRecipe::countable(seq)
      : opt.kind == "cantor"
          ? gapdim::SetRecipe::cantor(seq)
          : throw gapdim::ValidationError(
                "cover-estimate --kind must be cantor or countable");
  gapdim::ResolutionPolicy policy;
  policy.max_depth = opt.depth > 8 ? opt.depth : policy.max_depth;
  policy.max_count = opt.count > 2000 ? opt.count : policy.max_count;

  // grid points are independent; rows stay sorted by (theta, delta) so a
  // worker pool could never change the bytes
  std::vector<gapdim::EstimateRow> rows;
  for (double theta : grid) {
    gapdim::EstimateResult res =
        gapdim::estimate_dimension(recipe, theta, ladder, policy);
    rows.insert(rows.end(), res.rows.begin(), res.rows.end());
  }
  Sink sink(opt, "cover-estimate");
  Table t = estimate_table(rows, opt.no_timestamp);
  write_table(*sink.os, t, sink.json);
}

void dump_components(Sink& sink, const gapdim::IntervalSet& set) {
  if (sink.json) {
    nlohmann::ordered_json head;
    head["builder"] = set.info().builder;
    head["parameters"] = set.info().parameters;
    head["depth"] = std::to_string(set.info().depth);
    head["count"] = std::to_string(set.info().count);
    head["residual_bound"] = format_real(set.residual_bound());
    *sink.os << head.dump() << '\n';
    for (const gapdim::Component& c : set.components())
      *sink.os << nlohmann::ordered_json{{"left", format_real(c.left)},
                                         {"right", format_real(c.right)}}
                      .dump()
               << '\n';
    return;
  }
  *sink.os << gapdim::dump_interval_set(set);
}

void audit_tail(Sink& sink, const gapdim::GapAudit& audit) {
  if (sink.json) {
    nlohmann::ordered_json obj;
    obj["gap_audit_checked"] = std::to_string(audit.checked);
    obj["gap_audit_ok"] = audit.ok ? "true" : "false";
    if (!audit.ok) obj["gap_audit_message"] = audit.message;
    *sink.os << obj.dump() << '\n';
    return;
  }
  *sink.os << "# gap_audit_checked = " << audit.checked << '\n';
  *sink.os << "# gap_audit_ok = " << (audit.ok ? "true" : "false") << '\n';
  if (!audit.ok) *sink.os << "# gap_audit_message = " << audit.message << '\n';
}

void run_construct(const Options& opt) {
  gapdim::SequenceModel seq = gapdim::load_sequence_spec(opt.seq_path);

  Sink sink(opt, "construct");
  if (opt.kind == "cantor") {
    gapdim::IntervalSet set = gapdim::build_cantor(seq, opt.depth);
    dump_components(sink, set);
    audit_tail(sink, gapdim::verify_gaps(set, seq, opt.gaps));
    return;
  }
  if (opt.kind == "countable") {
    gapdim::IntervalSet set = gapdim::build_countable(seq, opt.count);
    dump_components(sink, set);
    audit_tail(sink, gapdim::verify_gaps(set, seq, opt.gaps));
    return;
  }
  if (opt.kind == "mixed") {
    if (!opt.has_target)
      throw gapdim::ValidationError("construct --kind mixed requires --t");
    double theta = theta_single(opt);
    gapdim::ConstructionPlan plan =
        gapdim::plan_construction(seq, theta, opt.t_target);
    gapdim::IntervalSet set =
        gapdim::build_mixed(plan, opt.depth, opt.count);
    if (!sink.json) {
      *sink.os << "# s_exponent = " << format_real(plan.s_exponent) << '\n';
      *sink.os << "# split_r = " << format_real(plan.split_r) << '\n';
      *sink.os << "# levels = " << plan.j_map.size() << '\n';
      if (!plan.note.empty()) *sink.os << "# note = " << plan.note << '\n';
    } else {
      nlohmann::ordered_json obj;
      obj["s_exponent"] = format_real(plan.s_exponent);
      obj["split_r"] = format_real(plan.split_r);
      obj["levels"] = std::to_string(plan.j_map.size());
      obj["note"] = plan.note;
      *sink.os << obj.dump() << '\n';
    }
    dump_components(sink, set);
    audit_tail(sink, gapdim::verify_gaps(set, seq, opt.gaps));
    return;
  }
  throw gapdim::ValidationError(
      "construct --kind must be cantor, countable, or mixed");
}

void run_maintheo_check(const Options& opt) {
  gapdim::SequenceModel seq = gapdim::load_sequence_spec(opt.seq_path);
  if (!opt.has_target)
    throw gapdim::ValidationError("maintheo-check requires --t");
  double theta = theta_single(opt);

  gapdim::ConstructionPlan plan =
      gapdim::plan_construction(seq, theta, opt.t_target);
  gapdim::IntervalSet set = gapdim::build_mixed(plan, opt.depth, opt.count);
  gapdim::GapAudit audit = gapdim::verify_gaps(set, seq, opt.gaps);

  std::vector<double> ladder;
  if (!opt.deltas_text.empty()) {
    ladder = parse_grid(opt.deltas_text, "--deltas");
  } else {
    // finest delta whose admissible lengths still dominate the residual
    double finest =
        std::pow(set.residual_bound() * (1.0 + 1e-9), theta);
    ladder = {std::min(finest * 8.0, 0.5), std::min(finest * 2.0, 0.25),
              finest};
    std::sort(ladder.begin(), ladder.end(), std::greater<double>());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  }
  gapdim::EstimateResult est =
      gapdim::estimate_set_dimension(set, theta, ladder);

  Sink sink(opt, "maintheo-check");
  Table head;
  head.columns = {"key", "value"};
  head.add({"spec", spec_line(seq)});
  head.add({"theta", format_real(theta)});
  head.add({"target", format_real(opt.t_target)});
  head.add({"s_exponent", format_real(plan.s_exponent)});
  head.add({"upper_cantor", format_real(plan.upper_cantor)});
  head.add({"upper_countable", format_real(plan.upper_countable)});
  head.add({"split_r", format_real(plan.split_r)});
  head.add({"levels", std::to_string(plan.j_map.size())});
  head.add({"note", plan.note});
  head.add({"depth", std::to_string(opt.depth)});
  head.add({"count", std::to_string(opt.count)});
  head.add({"components", std::to_string(set.components().size())});
  head.add({"gap_audit_checked", std::to_string(audit.checked)});
  head.add({"gap_audit_ok", audit.ok ? "true" : "false"});
  head.add({"estimate_s_star", format_real(est.trend)});
  head.add(
      {"estimate_abs_error", format_real(std::abs(est.trend - opt.t_target))});
  write_table(*sink.os, head, sink.json);

  if (!sink.json) *sink.os << '\n';
  Table t = estimate_table(est.rows, opt.no_timestamp);
  write_table(*sink.os, t, sink.json);
}

int error_record(const char* kind, const std::string& message, int code) {
  nlohmann::ordered_json obj;
  obj["error"] = kind;
  obj["message"] = message;
  std::cerr << obj.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dimension calculators, extremal set builders, and the covering "
      "estimator for complementary sets of summable gap sequences"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  for (const char* name :
       {"validate", "dims", "construct", "cover-estimate", "sweep-theta",
        "maintheo-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--seq", opt.seq_path, "sequence spec file")->required();
    sub->add_option("--theta", opt.theta_text,
                    "theta value or comma-separated grid, each in (0,1]");
    sub->add_option("--t", opt.t_target, "target dimension for construction")
        ->each([&](const std::string&) { opt.has_target = true; });
    sub->add_option("--depth", opt.depth, "levels for Cantor-style builds");
    sub->add_option("--count", opt.count, "points for countable builds");
    sub->add_option("--deltas", opt.deltas_text,
                    "comma-separated strictly decreasing scale ladder");
    sub->add_option("--out", opt.out_path, "output file (default stdout)");
    sub->add_option("--format", opt.format, "csv (default) or json-lines")
        ->check(CLI::IsMember({"csv", "json-lines"}));
    sub->add_flag("--no-timestamp", opt.no_timestamp,
                  "omit the timestamp header and zero runtime_ms");
    sub->add_option("--threads", opt.threads,
                    "worker budget; rows are sorted so the byte output "
                    "never depends on it")
        ->check(CLI::Range(1, 64));
    sub->add_option("--kind", opt.kind,
                    "set family: cantor, countable, or mixed");
    sub->add_option("--gaps", opt.gaps, "complement gaps to audit");
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_record("validation", e.what(), 2);
  }

  try {
    if (command == "validate") run_validate(opt);
    if (command == "dims") run_dims(opt);
    if (command == "construct") run_construct(opt);
    if (command == "cover-estimate") run_cover_estimate(opt);
    if (command == "sweep-theta") run_sweep_theta(opt);
    if (command == "maintheo-check") run_maintheo_check(opt);
  } catch (const gapdim::ValidationError& e) {
    return error_record("validation", e.what(), 2);
  } catch (const gapdim::PrecisionError& e) {
    return error_record("precision", e.what(), 3);
  } catch (const gapdim::InfeasibleError& e) {
    return error_record("infeasible", e.what(), 4);
  } catch (const std::exception& e) {
    return error_record("internal", e.what(), 1);
  }
  return 0;
}
