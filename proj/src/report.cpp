// Copyright 2026 The sl2sum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sl2sum/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

#include "sl2sum/errors.hpp"
#include "sl2sum/geomoracle.hpp"
#include "sl2sum/support.hpp"

namespace sl2sum::report {

namespace {

using std::numbers::pi;
using Clock = std::chrono::steady_clock;

constexpr std::string_view kArctan = "cycloid-arctan";

std::int64_t elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
      .count();
}

Reference constant(double v) { return {v, ReferenceSource::paper_constant}; }
Reference oracle(double v) { return {v, ReferenceSource::geometric_oracle}; }

// Closed forms published for the built-in sums.
std::optional<Reference> paper_constant(std::string_view curve, double s) {
  if (curve == "circle" && s == 2) return constant(2 - pi / 2);
  if (curve == "circle" && s == 1) return constant(2);
  if (curve == "parabola" && s == 2) return constant(1.0 / 48);
  if (curve == "parabola" && s == 1) return constant(0.5);
  if (curve == "hyperbola" && s == 2) {
    return constant(0.5 * std::log(3.0) + 2 * std::sqrt(3.0) - 4);
  }
  if ((curve == "cycloid" || curve == kArctan) && s == 2) return constant(pi);
  if (curve == "tractrix" && s == 2) return constant(pi);
  if (curve == "astroid" && s == 2) return constant(3 * pi / 16);
  if (curve == "astroid" && s == 1) return constant(-2);
  return std::nullopt;
}

std::optional<Reference> oracle_value(const support::Curve& c, double s) {
  try {
    if (s == 2) return oracle(2 * geomoracle::region_area(c));
    if (s == 1) return oracle(geomoracle::tangent_lengths(c));
  } catch (const Error&) {
    // Not computable for this curve.
  }
  return std::nullopt;
}

void attach(RunReport& r, std::optional<Reference> primary,
            std::optional<Reference> secondary) {
  if (!primary) {
    primary = secondary;
    secondary.reset();
  }
  r.reference = primary;
  r.secondary = secondary;
}

nlohmann::json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string opt_csv(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

std::optional<double> ref_value(const std::optional<Reference>& r) {
  return r ? std::optional<double>(r->value) : std::nullopt;
}

std::optional<double> digits_of(double value, const std::optional<Reference>& r) {
  if (!r) return std::nullopt;
  return digits_matched(value, r->value);
}

std::string source_of(const std::optional<Reference>& r) {
  return std::string(to_string(r ? r->source : ReferenceSource::none));
}

}  // namespace

std::string_view to_string(ReferenceSource s) {
  switch (s) {
    case ReferenceSource::paper_constant:
      return "paper-constant";
    case ReferenceSource::geometric_oracle:
      return "geometric-oracle";
    case ReferenceSource::none:
      return "none";
  }
  return "none";
}

int digits_matched(double value, double reference) {
  const double rel =
      std::abs(value - reference) / std::max(std::abs(reference), 1.0);
  if (!(rel > 0)) return std::isnan(rel) ? 0 : 17;
  const double d = std::floor(-std::log10(rel));
  return static_cast<int>(std::clamp(d, 0.0, 17.0));
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json to_json(const RunReport& r) {
  const series::SeriesResult& s = r.result;
  nlohmann::json j;
  j["command"] = r.command;
  j["value"] = s.value;
  j["nodes_used"] = s.nodes_used;
  j["truncated_subtrees"] = s.truncated_subtrees;
  j["tail_kind"] = std::string(series::to_string(s.tail_kind));
  j["tail_magnitude"] = s.tail_magnitude;
  j["overflow_truncations"] = s.overflow_truncations;
  j["reference_value"] = opt_json(ref_value(r.reference));
  j["reference_source"] = source_of(r.reference);
  j["digits_matched"] = opt_json(digits_of(s.value, r.reference));
  j["secondary_reference_value"] = opt_json(ref_value(r.secondary));
  j["secondary_reference_source"] = source_of(r.secondary);
  j["secondary_digits_matched"] = opt_json(digits_of(s.value, r.secondary));
  j["wall_time_ms"] = r.wall_time_ms;
  j["tolerance"] = opt_json(r.tolerance);
  j["passed"] = r.passed ? nlohmann::json(*r.passed) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const std::vector<RunReport>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RunReport& r : rows) arr.push_back(to_json(r));
  return arr;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "command",
      "value",
      "nodes_used",
      "truncated_subtrees",
      "tail_kind",
      "tail_magnitude",
      "overflow_truncations",
      "reference_value",
      "reference_source",
      "digits_matched",
      "secondary_reference_value",
      "secondary_reference_source",
      "secondary_digits_matched",
      "wall_time_ms",
      "tolerance",
      "passed",
  };
  return cols;
}

std::string csv_header() {
  std::string out;
  for (const std::string& c : csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string to_csv(const RunReport& r) {
  const series::SeriesResult& s = r.result;
  auto digits = [&](const std::optional<Reference>& ref) {
    const auto d = digits_of(s.value, ref);
    return d ? std::to_string(static_cast<int>(*d)) : std::string();
  };
  std::string command = r.command;
  if (command.find_first_of(",\"") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : command) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    command = quoted + "\"";
  }
  std::ostringstream os;
  os << command << ',' << format_real(s.value) << ',' << s.nodes_used << ','
     << s.truncated_subtrees << ',' << series::to_string(s.tail_kind) << ','
     << format_real(s.tail_magnitude) << ',' << s.overflow_truncations << ','
     << opt_csv(ref_value(r.reference)) << ',' << source_of(r.reference) << ','
     << digits(r.reference) << ',' << opt_csv(ref_value(r.secondary)) << ','
     << source_of(r.secondary) << ',' << digits(r.secondary) << ','
     << r.wall_time_ms << ',' << opt_csv(r.tolerance) << ','
     << (r.passed ? (*r.passed ? "true" : "false") : "");
  return os.str();
}

std::string to_text(const RunReport& r) {
  const series::SeriesResult& s = r.result;
  std::ostringstream os;
  os << "command             " << r.command << '\n'
     << "value               " << format_real(s.value) << '\n'
     << "nodes_used          " << s.nodes_used << '\n'
     << "truncated_subtrees  " << s.truncated_subtrees << '\n'
     << "tail                " << series::to_string(s.tail_kind) << ' '
     << format_real(s.tail_magnitude) << '\n'
     << "overflow            " << s.overflow_truncations << '\n';
  auto ref_line = [&](const char* label, const std::optional<Reference>& ref) {
    if (!ref) return;
    os << label << format_real(ref->value) << " (" << to_string(ref->source)
       << ", " << digits_matched(s.value, ref->value) << " digits)\n";
  };
  ref_line("reference           ", r.reference);
  ref_line("secondary reference ", r.secondary);
  if (r.tolerance) {
    os << "tolerance           " << format_real(*r.tolerance) << " -> "
       << (r.passed.value_or(false) ? "pass" : "FAIL") << '\n';
  }
  os << "wall_time_ms        " << r.wall_time_ms << '\n';
  return os.str();
}

std::string to_text_table(const std::vector<RunReport>& rows) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-40s %24s %24s %6s %10s %8s  %s\n",
                "identity", "value", "reference", "digits", "tolerance",
                "ms", "result");
  os << line;
  for (const RunReport& r : rows) {
    const std::string ref =
        r.reference ? format_real(r.reference->value) : std::string("-");
    const std::string digits =
        r.reference
            ? std::to_string(digits_matched(r.result.value, r.reference->value))
            : std::string("-");
    const std::string tol = r.tolerance ? [&] {
      char b[32];
      std::snprintf(b, sizeof b, "%.0e", *r.tolerance);
      return std::string(b);
    }()
                                        : std::string("-");
    const char* verdict =
        !r.passed ? "info" : (*r.passed ? "pass" : "FAIL");
    std::snprintf(line, sizeof line, "%-40s %24s %24s %6s %10s %8lld  %s\n",
                  r.command.c_str(), format_real(r.result.value).c_str(),
                  ref.c_str(), digits.c_str(), tol.c_str(),
                  static_cast<long long>(r.wall_time_ms), verdict);
    os << line;
  }
  return os.str();
}

std::vector<std::string> eval_curve_names() {
  std::vector<std::string> out;
  for (std::string_view n : support::builtin_names()) out.emplace_back(n);
  out.emplace_back(kArctan);
  return out;
}

RunReport eval(const EvalRequest& req, const kernel::PartialSink* sink) {
  const auto t0 = Clock::now();
  RunReport r;
  const double s = req.controls.s;
  if (!req.curve_file && req.curve == kArctan) {
    r.command = "eval cycloid-arctan";
    r.result = series::sum_cycloid_arctan(req.controls, sink);
    attach(r, paper_constant(kArctan, 2),
           oracle_value(support::builtin("cycloid"), 2));
    r.wall_time_ms = elapsed_ms(t0);
    return r;
  }
  const support::Curve curve =
      req.curve_file ? support::Curve(support::load_sampled(*req.curve_file))
                     : support::builtin(req.curve);
  std::ostringstream cmd;
  cmd << "eval " << (req.curve_file ? req.curve_file->string() : req.curve)
      << " s=" << s;
  r.command = cmd.str();
  r.result = series::sum_power(curve, req.controls, sink);
  std::optional<Reference> published =
      req.curve_file ? std::nullopt : paper_constant(curve.name(), s);
  std::optional<Reference> geometric = oracle_value(curve, s);
  if (curve.name() == support::Tractrix::name) {
    // The region between the tractrix and its axis tangents is the primary
    // reference; the published constant is kept for comparison.
    attach(r, geometric, published);
  } else {
    attach(r, published, geometric);
  }
  r.wall_time_ms = elapsed_ms(t0);
  return r;
}

RunReport mixed(const std::string& f, const std::string& g,
                const series::SumControls& controls) {
  const auto t0 = Clock::now();
  const support::Curve cf = support::builtin(f);
  const support::Curve cg = support::builtin(g);
  RunReport r;
  r.command = "mixed " + f + " " + g;
  r.result = series::mixed_sum(cf, cg, controls);
  std::optional<Reference> published;
  if (f == g) {
    if (auto p = paper_constant(f, 2)) published = constant(p->value / 2);
  }
  std::optional<Reference> geometric;
  try {
    geometric = oracle(geomoracle::mixed_volume_oracle(cf, cg));
  } catch (const Error&) {
    // Needs two convex-certified curves.
  }
  attach(r, published, geometric);
  r.wall_time_ms = elapsed_ms(t0);
  return r;
}

RunReport tornheim_run(const tornheim::TornheimQuery& q) {
  const auto t0 = Clock::now();
  RunReport r;
  std::ostringstream cmd;
  cmd << "tornheim s=" << q.s << " mode="
      << (q.mode == tornheim::Mode::zeta ? "zeta" : "direct");
  if (q.mode == tornheim::Mode::direct) cmd << " cutoff=" << q.cutoff;
  r.command = cmd.str();
  r.result = tornheim::tornheim_coprime(q);
  if (q.s == 1) r.reference = constant(2);
  if (q.s == 2) r.reference = constant(1.0 / 3);
  r.wall_time_ms = elapsed_ms(t0);
  return r;
}

std::vector<RunReport> cf_run(const contfrac::Alpha& alpha, std::size_t terms) {
  const auto t0 = Clock::now();
  const contfrac::CFExpansion e = contfrac::expand(alpha, terms);
  const double a = static_cast<double>(alpha.value());
  const std::string suffix = " alpha=" + alpha.label() +
                             " terms=" + std::to_string(e.quotients.size());
  const series::TailKind kind = alpha.exact() ? series::TailKind::certified
                                              : series::TailKind::estimated;
  RunReport abs_row;
  abs_row.command = "cf abs" + suffix;
  abs_row.result.value = contfrac::series_abs(e);
  abs_row.result.nodes_used = e.quotients.size();
  abs_row.result.tail_kind = kind;
  abs_row.result.tail_magnitude = contfrac::series_abs_tail(e);
  abs_row.reference = constant(a + 1);
  RunReport sq_row = abs_row;
  sq_row.command = "cf sq" + suffix;
  sq_row.result.value = contfrac::series_sq(e);
  sq_row.result.tail_magnitude = contfrac::series_sq_tail(e);
  sq_row.reference = constant(a);
  abs_row.wall_time_ms = sq_row.wall_time_ms = elapsed_ms(t0);
  return {abs_row, sq_row};
}

namespace {

struct Row {
  std::string name;
  std::function<RunReport()> run;
  std::optional<double> tolerance;  // absolute; unset for informational rows
};

series::SumControls controls_for(const VerifyOptions& opt, double s,
                                 double eps) {
  series::SumControls c;
  c.s = s;
  c.prune_epsilon = eps;
  c.threads = opt.threads;
  c.seed_depth = opt.seed_depth;
  return c;
}

RunReport eval_row(const VerifyOptions& opt, const std::string& curve,
                   double s, double eps) {
  EvalRequest req;
  req.curve = curve;
  req.controls = controls_for(opt, s, eps);
  return eval(req);
}

RunReport tornheim_row(double s) {
  tornheim::TornheimQuery q;
  q.s = s;
  q.mode = tornheim::Mode::zeta;
  return tornheim_run(q);
}

RunReport pick(std::vector<RunReport> rows, std::size_t i) {
  return std::move(rows.at(i));
}

// Tree sum of the parabola terms at s = 1 against 1/2.
RunReport parabola_weighted_tree(const VerifyOptions& opt, double eps) {
  return eval_row(opt, "parabola", 1, eps);
}

// The same sum through C(1) / 4 on the zeta path.
RunReport parabola_weighted_zeta() {
  RunReport r = tornheim_row(1);
  r.command = "parabola weighted s=1 via zeta";
  r.result.value /= 4;
  r.result.tail_magnitude /= 4;
  r.reference = constant(0.5);
  return r;
}

std::vector<Row> rows_for(const VerifyOptions& o) {
  using contfrac::Alpha;
  if (o.profile == Profile::quick) {
    return {
        {"circle F(2)", [o] { return eval_row(o, "circle", 2, 1e-8); }, 1e-6},
        {"circle F(1)", [o] { return eval_row(o, "circle", 1, 1.5e-11); }, 2e-3},
        {"parabola F(2)", [o] { return eval_row(o, "parabola", 2, 1e-8); }, 1e-8},
        {"parabola weighted F(1) via zeta", [] { return parabola_weighted_zeta(); }, 1e-8},
        {"hyperbola F(2)", [o] { return eval_row(o, "hyperbola", 2, 1e-8); }, 1e-6},
        {"cycloid F(2) arctan form", [o] { return eval_row(o, std::string(kArctan), 2, 1e-7); }, 1e-4},
        {"astroid F(2)", [o] { return eval_row(o, "astroid", 2, 1e-7); }, 1e-4},
        {"astroid F(1)", [o] { return eval_row(o, "astroid", 1, 3e-11); }, 2e-3},
        {"tornheim s=1", [] { return tornheim_row(1); }, 1e-6},
        {"tornheim s=2", [] { return tornheim_row(2); }, 1e-8},
        {"cf phi sq", [] { return pick(cf_run(Alpha::named("phi"), 40), 1); }, 1e-14},
        {"tractrix F(2)", [o] { return eval_row(o, "tractrix", 2, 1e-6); }, std::nullopt},
    };
  }
  return {
      {"circle F(2)", [o] { return eval_row(o, "circle", 2, 1e-9); }, 1e-6},
      {"circle F(1)", [o] { return eval_row(o, "circle", 1, 1.5e-11); }, 1e-3},
      {"parabola F(2)", [o] { return eval_row(o, "parabola", 2, 1e-9); }, 1e-8},
      {"parabola weighted F(1) tree", [o] { return parabola_weighted_tree(o, 4e-13); }, 1e-4},
      {"parabola weighted F(1) via zeta", [] { return parabola_weighted_zeta(); }, 1e-8},
      {"hyperbola F(2)", [o] { return eval_row(o, "hyperbola", 2, 1e-9); }, 1e-6},
      {"cycloid F(2) arccos form", [o] { return eval_row(o, "cycloid", 2, 1e-8); }, 1e-4},
      {"cycloid F(2) arctan form", [o] { return eval_row(o, std::string(kArctan), 2, 1e-8); }, 1e-4},
      {"astroid F(2)", [o] { return eval_row(o, "astroid", 2, 1e-8); }, 1e-4},
      {"astroid F(1)", [o] { return eval_row(o, "astroid", 1, 3e-11); }, 1e-3},
      {"tractrix F(2)", [o] { return eval_row(o, "tractrix", 2, 1e-6); }, 1e-4},
      {"tornheim s=1", [] { return tornheim_row(1); }, 1e-6},
      {"tornheim s=2", [] { return tornheim_row(2); }, 1e-8},
      {"cf phi abs", [] { return pick(cf_run(Alpha::named("phi"), 40), 0); }, 1e-12},
      {"cf phi sq", [] { return pick(cf_run(Alpha::named("phi"), 40), 1); }, 1e-14},
      {"cf 1+sqrt2 abs", [] { return pick(cf_run(Alpha::surd(1, 2, 1), 30), 0); }, 1e-10},
      {"cf 1+sqrt2 sq", [] { return pick(cf_run(Alpha::surd(1, 2, 1), 30), 1); }, 1e-10},
      {"cf pi abs", [] { return pick(cf_run(Alpha::named("pi", 50), 20), 0); }, 1e-6},
      {"cf pi sq", [] { return pick(cf_run(Alpha::named("pi", 50), 20), 1); }, 1e-6},
      {"mixed circle parabola", [o] { return mixed("circle", "parabola", controls_for(o, 2, 1e-9)); }, 1e-4},
  };
}

}  // namespace

std::vector<RunReport> verify(const VerifyOptions& opt) {
  std::vector<RunReport> out;
  for (const Row& row : rows_for(opt)) {
    RunReport r = row.run();
    r.command = row.name;
    r.tolerance = row.tolerance;
    if (row.tolerance && r.reference) {
      r.passed = std::abs(r.result.value - r.reference->value) <= *row.tolerance;
    } else if (row.tolerance) {
      r.passed = false;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace sl2sum::report
