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

// sl2sum: command-line front end.
//
// Exit codes: 0 success, 1 computation or verification failure, 2 usage.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sl2sum/errors.hpp"
#include "sl2sum/report.hpp"

namespace {

using sl2sum::report::RunReport;

enum class Format { text, json, csv };

struct Common {
  std::string format = "text";
  double prune = 1e-9;
  std::uint64_t depth_cap = std::uint64_t{1} << 24;
  std::uint64_t budget = 100'000'000;
  int threads = 0;
  unsigned seed_depth = 6;
};

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

void add_engine(CLI::App* app, Common& c) {
  app->add_option("--prune", c.prune, "prune nodes with |term| below this")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--depth-cap", c.depth_cap, "maximum tree depth")
      ->check(CLI::PositiveNumber);
  app->add_option("--budget", c.budget, "node budget")
      ->check(CLI::PositiveNumber);
  app->add_option("--threads", c.threads, "OpenMP threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--seed-depth", c.seed_depth,
                  "depth at which the tree is split across threads");
}

sl2sum::series::SumControls controls_of(const Common& c, double s) {
  sl2sum::series::SumControls sc;
  sc.s = s;
  sc.prune_epsilon = c.prune;
  sc.depth_cap = c.depth_cap;
  sc.node_budget = c.budget;
  sc.threads = c.threads;
  sc.seed_depth = c.seed_depth;
  return sc;
}

void emit(const std::vector<RunReport>& rows, const std::string& format,
          bool table) {
  if (format == "json") {
    const nlohmann::json j = rows.size() == 1 && !table
                                 ? sl2sum::report::to_json(rows.front())
                                 : sl2sum::report::to_json(rows);
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << sl2sum::report::csv_header() << '\n';
    for (const RunReport& r : rows) std::cout << sl2sum::report::to_csv(r) << '\n';
  } else if (table) {
    std::cout << sl2sum::report::to_text_table(rows);
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0) std::cout << '\n';
      std::cout << sl2sum::report::to_text(rows[i]);
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sums over the positive part of SL(2, Z)"};
  app.require_subcommand(1);

  Common eval_opts;
  std::string curve;
  std::string curve_file;
  double power = 2;
  bool emit_partials = false;
  CLI::App* eval = app.add_subcommand("eval", "power sum for one curve");
  eval->add_option("--curve", curve, "built-in curve or cycloid-arctan");
  eval->add_option("--curve-file", curve_file, "sampled curve (.csv or .json)")
      ->check(CLI::ExistingFile);
  eval->add_option("--power", power, "exponent s")->check(CLI::PositiveNumber);
  eval->add_flag("--emit-partials", emit_partials,
                 "print (nodes_used, partial_value) rows to stderr");
  add_engine(eval, eval_opts);
  add_format(eval, eval_opts);

  Common verify_opts;
  std::string profile = "quick";
  CLI::App* verify = app.add_subcommand("verify", "run the identity table");
  verify->add_option("--profile", profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--threads", verify_opts.threads)->check(CLI::NonNegativeNumber);
  verify->add_option("--seed-depth", verify_opts.seed_depth);
  add_format(verify, verify_opts);

  Common torn_opts;
  double torn_s = 2;
  std::string mode = "zeta";
  std::uint64_t cutoff = 2000;
  CLI::App* torn = app.add_subcommand("tornheim", "coprime Mordell-Tornheim sum");
  torn->add_option("--s", torn_s, "exponent, > 2/3");
  torn->add_option("--mode", mode, "direct or zeta")
      ->check(CLI::IsMember({"direct", "zeta"}));
  torn->add_option("--cutoff", cutoff, "max(b, d) summed exactly in direct mode");
  add_format(torn, torn_opts);

  Common cf_opts;
  std::string alpha = "phi";
  std::size_t terms = 40;
  CLI::App* cf = app.add_subcommand("cf", "continued-fraction series");
  cf->add_option("--alpha", alpha,
                 "phi, sqrt2, pi, e, a decimal, or a surd P,D,Q for (P+sqrt D)/Q");
  cf->add_option("--terms", terms, "number of partial quotients")
      ->check(CLI::PositiveNumber);
  add_format(cf, cf_opts);

  Common mixed_opts;
  std::string f = "circle";
  std::string g = "circle";
  CLI::App* mixed = app.add_subcommand("mixed", "mixed sum of two curves");
  mixed->add_option("--f", f, "first curve");
  mixed->add_option("--g", g, "second curve");
  add_engine(mixed, mixed_opts);
  add_format(mixed, mixed_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval) {
      if (curve.empty() == curve_file.empty()) {
        std::cerr << "eval: give exactly one of --curve or --curve-file\n";
        return 2;
      }
      if (!curve.empty()) {
        bool known = false;
        for (const std::string& n : sl2sum::report::eval_curve_names()) {
          known = known || n == curve;
        }
        if (!known) {
          std::cerr << "eval: unknown curve '" << curve << "'\n";
          return 2;
        }
      }
      sl2sum::report::EvalRequest req;
      req.curve = curve;
      if (!curve_file.empty()) req.curve_file = curve_file;
      req.controls = controls_of(eval_opts, power);
      const sl2sum::kernel::PartialSink sink = [](std::uint64_t n, double v) {
        std::fprintf(stderr, "%llu,%.17g\n", static_cast<unsigned long long>(n), v);
      };
      if (emit_partials) std::fprintf(stderr, "nodes_used,partial_value\n");
      const RunReport r =
          sl2sum::report::eval(req, emit_partials ? &sink : nullptr);
      emit({r}, eval_opts.format, false);
      return 0;
    }
    if (*verify) {
      sl2sum::report::VerifyOptions opt;
      opt.profile = profile == "full" ? sl2sum::report::Profile::full
                                      : sl2sum::report::Profile::quick;
      opt.threads = verify_opts.threads;
      opt.seed_depth = verify_opts.seed_depth;
      const auto rows = sl2sum::report::verify(opt);
      emit(rows, verify_opts.format, true);
      for (const RunReport& r : rows) {
        if (r.passed && !*r.passed) return 1;
      }
      return 0;
    }
    if (*torn) {
      sl2sum::tornheim::TornheimQuery q;
      q.s = torn_s;
      q.cutoff = cutoff;
      q.mode = mode == "direct" ? sl2sum::tornheim::Mode::direct
                                : sl2sum::tornheim::Mode::zeta;
      emit({sl2sum::report::tornheim_run(q)}, torn_opts.format, false);
      return 0;
    }
    if (*cf) {
      const auto a = sl2sum::contfrac::Alpha::parse(alpha);
      emit(sl2sum::report::cf_run(a, terms), cf_opts.format, false);
      return 0;
    }
    if (*mixed) {
      emit({sl2sum::report::mixed(f, g, controls_of(mixed_opts, 2))},
           mixed_opts.format, false);
      return 0;
    }
  } catch (const sl2sum::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
