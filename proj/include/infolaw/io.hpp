// Copyright 2026 The InfoLaw Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON, JSONL and CSV schemas for parameters, run records, fit results,
// search reports and pack manifests.

#ifndef INFOLAW_IO_HPP_
#define INFOLAW_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "infolaw/core.hpp"
#include "infolaw/fitting.hpp"
#include "infolaw/pack.hpp"
#include "infolaw/search.hpp"

namespace infolaw {

using Json = nlohmann::ordered_json;

std::string normalization_name(const Normalization<double>& norm);
// "logarithmic", "constant" or "power:<p>".
Normalization<double> parse_normalization(const std::string& text);
std::string lambda_form_name(LambdaForm form);
LambdaForm parse_lambda_form(const std::string& name);
std::string grouping_name(Grouping grouping);
Grouping parse_grouping(const std::string& name);

Json to_json(const BucketArrayd& values);
BucketArrayd bucket_array_from_json(const Json& j);

Json to_json(const ModelArch& arch);
// A label from the built-in family or a full object.
ModelArch arch_from_json(const Json& j);

Json to_json(const InfoLawParams<double>& params);
InfoLawParams<double> params_from_json(const Json& j);
// "paper" for the built-in set, otherwise a JSON file path.
InfoLawParams<double> load_params(const std::string& source);

// A preset name or a weight array. Arrays whose sum is within 0.005 of one
// are rescaled, which admits tables printed to three decimals.
MixtureRecipe<double> recipe_from_json(const Json& j, RecipeMode mode = RecipeMode::kSimplex);

Json to_json(const RunRecord& run);
RunRecord run_from_json(const Json& j);
std::vector<RunRecord> read_run_records(std::istream& in);
void write_run_records(std::ostream& out, const std::vector<RunRecord>& runs);

Json to_json(const FitResult& fit);
FitResult fit_result_from_json(const Json& j);

Json to_json(const PackManifest& manifest);
PackManifest manifest_from_json(const Json& j);

Json to_json(const ScoredRecipe& scored);
Json to_json(const SearchResult& result);
Json to_json(const std::vector<RecipeReportRow>& rows);
// Weights to three decimals.
std::string recipe_report_csv(const std::vector<RecipeReportRow>& rows);

// Plot data. Headers are fixed:
//   collapse: label,flops_per_token,train_tokens,info,ln_info,observed_loss,ln_observed_loss,predicted_loss
//   lambda:   flops_per_token,ln_flops_per_token,lambda_fitted,lambda_curve
//   compare:  label,compute,ln_compute,observed_loss,compute_law_loss,infolaw_loss,set
std::string collapse_csv(const std::vector<RunDiagnostic>& points);
std::string lambda_csv(const FitResult& fit);
std::string comparison_csv(const LawComparison& comparison);

Json parse_json(const std::string& text, const std::string& origin);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace infolaw

#endif  // INFOLAW_IO_HPP_
