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

#include <doctest.h>

#include <sstream>

#include "infolaw/budget.hpp"
#include "infolaw/io.hpp"
#include "infolaw/presets.hpp"
#include "infolaw/synth.hpp"

using namespace infolaw;

TEST_CASE("parameter JSON round trips") {
  const InfoLawParams<double> paper = paper_params();
  CHECK(params_from_json(to_json(paper)) == paper);
  InfoLawParams<double> other = paper;
  other.lambda = {LambdaForm::kExponential, 3.1, 1.0 / 3e9, 0.25};
  other.normalization = Normalization<double>::power(0.37);
  other.theta = 0.1 + 1e-17;
  CHECK(params_from_json(parse_json(to_json(other).dump(), "test")) == other);
  CHECK(load_params("paper") == paper);
  CHECK_THROWS_AS(params_from_json(Json{{"theta", 1}}), Error);
  CHECK_THROWS_AS(load_params("/nonexistent/params.json"), Error);
}

TEST_CASE("run records round trip through JSONL") {
  auto runs = generate_runs(reference_fit_spec(paper_params(), 0.01, 4));
  runs[1].checkpoints = {{1e9, 2.5}, {2e9, 2.2}};
  std::stringstream stream;
  write_run_records(stream, runs);
  CHECK(read_run_records(stream) == runs);

  std::istringstream by_label(
      "{\"arch\":\"1.2B\",\"train_tokens\":1e11,\"source_tokens\":1e11,\"recipe\":\"MQ\",\"loss\":1.2}\n");
  const auto parsed = read_run_records(by_label);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].arch == find_arch("1.2B"));
  CHECK(parsed[0].recipe == preset_recipe("MQ"));

  std::istringstream bad("{\"arch\":\"1.2B\",\"train_tokens\":1e11}\n");
  CHECK_THROWS_AS(read_run_records(bad), Error);
}

TEST_CASE("recipe arrays printed to three decimals are rescaled") {
  const MixtureRecipe<double> r = recipe_from_json(Json::array({0.548, 0.444, 0.004, 0.003, 0.002, 0}));
  CHECK(r.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(recipe_from_json(Json::array({0.5, 0.4, 0, 0, 0, 0})), Error);
}

TEST_CASE("fit results round trip and export") {
  FitConfig config;
  config.n_samples = 20000;
  config.workers = 4;
  const FitResult fit = fit_full_pipeline(generate_runs(reference_fit_spec(paper_params(), 0, 0)), config);
  CHECK(fit_result_from_json(parse_json(to_json(fit).dump(), "test")) == fit);

  const std::string collapse = collapse_csv(fit.diagnostics);
  std::istringstream lines(collapse);
  std::string header, line;
  std::getline(lines, header);
  CHECK(header == "label,flops_per_token,train_tokens,info,ln_info,observed_loss,ln_observed_loss,predicted_loss");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 27);
  for (const RunDiagnostic& d : fit.diagnostics) {
    CHECK(std::abs(d.observed / predict_loss(d.info, fit.params) - 1) < 0.005);
  }
  CHECK(collapse_csv({}) == header + "\n");
  const std::string lambda = lambda_csv(fit);
  CHECK(lambda.rfind("flops_per_token,ln_flops_per_token,lambda_fitted,lambda_curve\n", 0) == 0);
  CHECK(std::count(lambda.begin(), lambda.end(), '\n') == 10);
}

TEST_CASE("recipe report CSV uses three decimals") {
  BucketArrayd w;
  w << 0.5556, 0.4444, 0, 0, 0, 0;
  const std::vector<RecipeReportRow> rows{
      {"1.2B", 8455716864.0, 3e11, 5e11, MixtureRecipe<double>(w), 1e11, 1.1}};
  const std::string csv = recipe_report_csv(rows);
  CHECK(csv.find(",0.556,0.444,0.000,0.000,0.000,0.000,") != std::string::npos);
  CHECK(to_json(rows)[0]["recipe"][0] == 0.5556);
}
