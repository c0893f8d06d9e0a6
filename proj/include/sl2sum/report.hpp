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

// Run reports: one evaluation with its references, serialized as text, JSON
// or CSV, and the verification table built from them.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sl2sum/contfrac.hpp"
#include "sl2sum/series.hpp"
#include "sl2sum/tornheim.hpp"

namespace sl2sum::report {

enum class ReferenceSource { paper_constant, geometric_oracle, none };

std::string_view to_string(ReferenceSource s);

struct Reference {
  double value = 0;
  ReferenceSource source = ReferenceSource::none;
};

struct RunReport {
  std::string command;
  series::SeriesResult result;
  std::optional<Reference> reference;
  // Informational only; never decides pass or fail.
  std::optional<Reference> secondary;
  std::int64_t wall_time_ms = 0;
  // Set on verification rows: pass means |value - reference| <= tolerance.
  std::optional<double> tolerance;
  std::optional<bool> passed;
};

// floor(-log10(|value - reference| / max(|reference|, 1))), at least 0 and
// at most 17.
int digits_matched(double value, double reference);

// %.17g.
std::string format_real(double x);

// Every key is always present; absent optionals are null.
nlohmann::json to_json(const RunReport& r);
nlohmann::json to_json(const std::vector<RunReport>& rows);

// command,value,nodes_used,truncated_subtrees,tail_kind,tail_magnitude,
// overflow_truncations,reference_value,reference_source,digits_matched,
// secondary_reference_value,secondary_reference_source,
// secondary_digits_matched,wall_time_ms,tolerance,passed
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string to_csv(const RunReport& r);

std::string to_text(const RunReport& r);
std::string to_text_table(const std::vector<RunReport>& rows);

// Curve names accepted by eval: the built-ins and cycloid-arctan.
std::vector<std::string> eval_curve_names();

struct EvalRequest {
  std::string curve;  // ignored when curve_file is set
  std::optional<std::filesystem::path> curve_file;
  series::SumControls controls;
};

// Throws InvalidInput for an unknown curve name.
RunReport eval(const EvalRequest& req,
               const kernel::PartialSink* sink = nullptr);
RunReport mixed(const std::string& f, const std::string& g,
                const series::SumControls& controls);
RunReport tornheim_run(const tornheim::TornheimQuery& q);
// Two reports: the absolute series (reference alpha + 1) and the squared
// series (reference alpha).
std::vector<RunReport> cf_run(const contfrac::Alpha& alpha, std::size_t terms);

enum class Profile { quick, full };

struct VerifyOptions {
  Profile profile = Profile::quick;
  int threads = 0;
  unsigned seed_depth = 6;
};

std::vector<RunReport> verify(const VerifyOptions& opt);

}  // namespace sl2sum::report
