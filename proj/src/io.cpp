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

#include "infolaw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "infolaw/budget.hpp"
#include "infolaw/presets.hpp"

namespace infolaw {
namespace {

// nlohmann reports schema mismatches as its own exceptions; surface them as
// invalid input with the failing context.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidInput, std::string("malformed ") + what + ": " + e.what());
  }
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

// JSON has no infinity; unbounded repetition is written as null.
Json finite_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

double number_or_inf(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

std::string normalization_name(const Normalization<double>& norm) {
  switch (norm.mode) {
    case NormalizationMode::kLogarithmic: return "logarithmic";
    case NormalizationMode::kConstant: return "constant";
    case NormalizationMode::kPower: return "power";
  }
  return "logarithmic";
}

Normalization<double> parse_normalization(const std::string& text) {
  if (text == "logarithmic" || text == "log") return Normalization<double>::logarithmic();
  if (text == "constant") return Normalization<double>::constant();
  if (text.rfind("power:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double p = std::stod(text.substr(6), &used);
      if (used == text.size() - 6) return Normalization<double>::power(p);
    } catch (const std::exception&) {
    }
  }
  fail(ErrorCode::kInvalidParameter,
       "normalization must be logarithmic, constant or power:<p>, got " + text);
}

std::string lambda_form_name(LambdaForm form) {
  switch (form) {
    case LambdaForm::kLogarithmic: return "logarithmic";
    case LambdaForm::kExponential: return "exponential";
    case LambdaForm::kPower: return "power";
  }
  return "logarithmic";
}

LambdaForm parse_lambda_form(const std::string& name) {
  if (name == "logarithmic" || name == "log") return LambdaForm::kLogarithmic;
  if (name == "exponential") return LambdaForm::kExponential;
  if (name == "power") return LambdaForm::kPower;
  fail(ErrorCode::kInvalidParameter, "unknown lambda form: " + name);
}

std::string grouping_name(Grouping grouping) {
  return grouping == Grouping::kGlobal ? "global" : "per_model";
}

Grouping parse_grouping(const std::string& name) {
  if (name == "global") return Grouping::kGlobal;
  if (name == "per_model") return Grouping::kPerModel;
  fail(ErrorCode::kInvalidParameter, "unknown grouping: " + name);
}

Json to_json(const BucketArrayd& values) {
  Json j = Json::array();
  for (int d = 0; d < kNumBuckets; ++d) j.push_back(values[d]);
  return j;
}

BucketArrayd bucket_array_from_json(const Json& j) {
  if (!j.is_array() || j.size() != kNumBuckets) {
    fail(ErrorCode::kInvalidInput, "expected an array of six numbers");
  }
  BucketArrayd out;
  guarded("bucket array", [&] {
    for (int d = 0; d < kNumBuckets; ++d) out[d] = j.at(d).get<double>();
  });
  return out;
}

Json to_json(const ModelArch& arch) {
  return {{"label", arch.label},       {"hidden_dim", arch.hidden_dim},
          {"mlp_dim", arch.mlp_dim},   {"n_layers", arch.n_layers},
          {"n_heads", arch.n_heads},   {"seq_len", arch.seq_len}};
}

ModelArch arch_from_json(const Json& j) {
  if (j.is_string()) return find_arch(j.get<std::string>());
  return guarded("model architecture", [&] {
    ModelArch arch;
    arch.label = j.value("label", "");
    arch.hidden_dim = j.at("hidden_dim").get<int>();
    arch.mlp_dim = j.at("mlp_dim").get<int>();
    arch.n_layers = j.at("n_layers").get<int>();
    arch.n_heads = j.at("n_heads").get<int>();
    arch.seq_len = j.value("seq_len", 2048);
    arch.validate();
    return arch;
  });
}

Json to_json(const InfoLawParams<double>& params) {
  return {{"theta", params.theta},
          {"lambda",
           {{"form", lambda_form_name(params.lambda.form)},
            {"a", params.lambda.a},
            {"b", params.lambda.b},
            {"c", params.lambda.c}}},
          {"alpha", params.alpha},
          {"beta", params.beta},
          {"normalization",
           {{"mode", normalization_name(params.normalization)},
            {"exponent", params.normalization.exponent}}}};
}

InfoLawParams<double> params_from_json(const Json& j) {
  return guarded("parameters", [&] {
    InfoLawParams<double> p;
    p.theta = j.at("theta").get<double>();
    const Json& lambda = j.at("lambda");
    p.lambda.form = parse_lambda_form(lambda.value("form", "logarithmic"));
    p.lambda.a = lambda.at("a").get<double>();
    p.lambda.b = lambda.at("b").get<double>();
    p.lambda.c = lambda.value("c", 0.0);
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    if (j.contains("normalization")) {
      const Json& norm = j.at("normalization");
      const std::string mode = norm.value("mode", "logarithmic");
      p.normalization = mode == "power"
                            ? Normalization<double>::power(norm.value("exponent", 0.0))
                            : parse_normalization(mode);
    }
    p.validate();
    return p;
  });
}

InfoLawParams<double> load_params(const std::string& source) {
  if (source == "paper") return paper_params();
  return params_from_json(parse_json(read_file(source), source));
}

MixtureRecipe<double> recipe_from_json(const Json& j, RecipeMode mode) {
  if (j.is_string()) return preset_recipe(j.get<std::string>());
  const BucketArrayd w = bucket_array_from_json(j);
  const double drift = std::abs(w.sum() - 1);
  if (drift > kSimplexTolerance && drift <= 0.005) return MixtureRecipe<double>::normalized(w, mode);
  return MixtureRecipe<double>(w, mode);
}

Json to_json(const RunRecord& run) {
  Json checkpoints = Json::array();
  for (const Checkpoint& cp : run.checkpoints) {
    checkpoints.push_back({{"tokens", cp.tokens}, {"loss", cp.loss}});
  }
  return {{"arch", to_json(run.arch)},
          {"train_tokens", run.train_tokens},
          {"source_tokens", run.corpus.source_tokens},
          {"proportions", to_json(run.corpus.proportions)},
          {"recipe", to_json(run.recipe.weights())},
          {"loss", run.loss},
          {"checkpoints", checkpoints}};
}

RunRecord run_from_json(const Json& j) {
  return guarded("run record", [&] {
    const BucketArrayd proportions = j.contains("proportions")
                                         ? bucket_array_from_json(j.at("proportions"))
                                         : default_bucket_proportions();
    RunRecord run{arch_from_json(j.at("arch")),
                  j.at("train_tokens").get<double>(),
                  CorpusSpec<double>(j.at("source_tokens").get<double>(), proportions),
                  recipe_from_json(j.at("recipe")),
                  j.at("loss").get<double>(),
                  {}};
    if (j.contains("checkpoints")) {
      for (const Json& cp : j.at("checkpoints")) {
        run.checkpoints.push_back({cp.at("tokens").get<double>(), cp.at("loss").get<double>()});
      }
    }
    run.validate();
    return run;
  });
}

std::vector<RunRecord> read_run_records(std::istream& in) {
  std::vector<RunRecord> runs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      runs.push_back(run_from_json(parse_json(line, "run record")));
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) fail(ErrorCode::kIo, "read error while loading run records");
  return runs;
}

void write_run_records(std::ostream& out, const std::vector<RunRecord>& runs) {
  for (const RunRecord& run : runs) out << to_json(run).dump() << '\n';
}

Json to_json(const FitResult& fit) {
  Json lambdas = Json::array();
  for (const auto& [n, lambda] : fit.per_n_lambda) {
    lambdas.push_back({{"flops_per_token", n}, {"lambda", lambda}});
  }
  Json diagnostics = Json::array();
  for (const RunDiagnostic& d : fit.diagnostics) {
    diagnostics.push_back({{"label", d.label},
                           {"flops_per_token", d.flops_per_token},
                           {"train_tokens", d.train_tokens},
                           {"info", d.info},
                           {"observed", d.observed},
                           {"predicted", d.predicted},
                           {"residual", d.residual}});
  }
  return {{"params", to_json(fit.params)},
          {"per_n_lambda", lambdas},
          {"objective_value", fit.objective_value},
          {"loglog_r2", fit.loglog_r2},
          {"lambda_rss", fit.lambda_rss},
          {"diagnostics", diagnostics}};
}

FitResult fit_result_from_json(const Json& j) {
  return guarded("fit result", [&] {
    FitResult fit;
    fit.params = params_from_json(j.at("params"));
    for (const Json& p : j.at("per_n_lambda")) {
      fit.per_n_lambda[p.at("flops_per_token").get<double>()] = p.at("lambda").get<double>();
    }
    fit.objective_value = j.at("objective_value").get<double>();
    fit.loglog_r2 = j.at("loglog_r2").get<double>();
    fit.lambda_rss = j.at("lambda_rss").get<double>();
    for (const Json& d : j.at("diagnostics")) {
      fit.diagnostics.push_back({d.at("label").get<std::string>(),
                                 d.at("flops_per_token").get<double>(),
                                 d.at("train_tokens").get<double>(), d.at("info").get<double>(),
                                 d.at("observed").get<double>(), d.at("predicted").get<double>(),
                                 d.at("residual").get<double>()});
    }
    return fit;
  });
}

Json to_json(const PackManifest& m) {
  Json buckets = Json::array();
  for (int d = 0; d < kNumBuckets; ++d) {
    const BucketManifest& b = m.buckets[d];
    Json histogram = Json::object();
    for (const auto& [copies, docs] : b.copy_histogram) histogram[std::to_string(copies)] = docs;
    buckets.push_back({{"bucket", d},
                       {"target", b.target},
                       {"source", b.source},
                       {"documents", b.documents},
                       {"realized", b.realized},
                       {"planned_unique", b.planned_unique},
                       {"realized_unique", b.realized_unique},
                       {"planned_repetition", finite_or_null(b.planned_repetition)},
                       {"realized_repetition", b.realized_repetition},
                       {"copy_histogram", histogram}});
  }
  return {{"seed", m.seed},
          {"train_tokens", m.train_tokens},
          {"recipe", to_json(m.recipe)},
          {"total_tokens", m.total_tokens},
          {"corpus_digest", m.corpus_digest},
          {"plan_digest", m.plan_digest},
          {"buckets", buckets}};
}

PackManifest manifest_from_json(const Json& j) {
  return guarded("pack manifest", [&] {
    PackManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.train_tokens = j.at("train_tokens").get<double>();
    m.recipe = bucket_array_from_json(j.at("recipe"));
    m.total_tokens = j.at("total_tokens").get<std::uint64_t>();
    m.corpus_digest = j.at("corpus_digest").get<std::string>();
    m.plan_digest = j.at("plan_digest").get<std::string>();
    const Json& buckets = j.at("buckets");
    if (!buckets.is_array() || buckets.size() != kNumBuckets) {
      fail(ErrorCode::kInvalidInput, "manifest must list six buckets");
    }
    for (int d = 0; d < kNumBuckets; ++d) {
      const Json& jb = buckets.at(d);
      BucketManifest& b = m.buckets[d];
      b.target = jb.at("target").get<double>();
      b.source = jb.at("source").get<std::uint64_t>();
      b.documents = jb.at("documents").get<std::uint64_t>();
      b.realized = jb.at("realized").get<std::uint64_t>();
      b.planned_unique = jb.at("planned_unique").get<double>();
      b.realized_unique = jb.at("realized_unique").get<std::uint64_t>();
      b.planned_repetition = number_or_inf(jb.at("planned_repetition"));
      b.realized_repetition = jb.at("realized_repetition").get<double>();
      for (const auto& [copies, docs] : jb.at("copy_histogram").items()) {
        b.copy_histogram[std::stoull(copies)] = docs.get<std::uint64_t>();
      }
    }
    return m;
  });
}

Json to_json(const ScoredRecipe& scored) {
  return {{"index", scored.index},
          {"recipe", to_json(scored.recipe.weights())},
          {"info", scored.info},
          {"loss", scored.loss}};
}

Json to_json(const SearchResult& result) {
  Json top = Json::array();
  for (const ScoredRecipe& s : result.top) top.push_back(to_json(s));
  return {{"best", to_json(result.best)}, {"top", top}};
}

Json to_json(const std::vector<RecipeReportRow>& rows) {
  Json out = Json::array();
  for (const RecipeReportRow& r : rows) {
    out.push_back({{"model", r.model},
                   {"flops_per_token", r.flops_per_token},
                   {"train_tokens", r.train_tokens},
                   {"source_tokens", r.source_tokens},
                   {"recipe", to_json(r.recipe.weights())},
                   {"info", r.info},
                   {"loss", r.loss}});
  }
  return out;
}

std::string recipe_report_csv(const std::vector<RecipeReportRow>& rows) {
  std::string out = "model,flops_per_token,train_tokens,source_tokens,w0,w1,w2,w3,w4,w5,info,loss\n";
  for (const RecipeReportRow& r : rows) {
    out += r.model + ',' + fmt("%.12g", r.flops_per_token) + ',' + fmt("%.12g", r.train_tokens) +
           ',' + fmt("%.12g", r.source_tokens);
    for (int d = 0; d < kNumBuckets; ++d) out += ',' + fmt("%.3f", r.recipe[d]);
    out += ',' + fmt("%.10g", r.info) + ',' + fmt("%.10g", r.loss) + '\n';
  }
  return out;
}

std::string collapse_csv(const std::vector<RunDiagnostic>& points) {
  std::string out =
      "label,flops_per_token,train_tokens,info,ln_info,observed_loss,ln_observed_loss,"
      "predicted_loss\n";
  for (const RunDiagnostic& p : points) {
    out += p.label + ',' + fmt("%.12g", p.flops_per_token) + ',' + fmt("%.12g", p.train_tokens) +
           ',' + fmt("%.12g", p.info) + ',' + fmt("%.12g", std::log(p.info)) + ',' +
           fmt("%.12g", p.observed) + ',' + fmt("%.12g", std::log(p.observed)) + ',' +
           fmt("%.12g", p.predicted) + '\n';
  }
  return out;
}

std::string lambda_csv(const FitResult& fit) {
  std::string out = "flops_per_token,ln_flops_per_token,lambda_fitted,lambda_curve\n";
  for (const auto& [n, lambda] : fit.per_n_lambda) {
    out += fmt("%.12g", n) + ',' + fmt("%.12g", std::log(n)) + ',' + fmt("%.12g", lambda) + ',' +
           fmt("%.12g", fit.params.lambda(n)) + '\n';
  }
  return out;
}

std::string comparison_csv(const LawComparison& comparison) {
  std::string out = "label,compute,ln_compute,observed_loss,compute_law_loss,infolaw_loss,set\n";
  for (const LawComparisonRow& r : comparison.rows) {
    out += r.label + ',' + fmt("%.12g", r.compute) + ',' + fmt("%.12g", std::log(r.compute)) +
           ',' + fmt("%.12g", r.observed) + ',' + fmt("%.12g", r.compute_law) + ',' +
           fmt("%.12g", r.infolaw) + ',' + (r.in_fit ? "fit" : "heldout") + '\n';
  }
  return out;
}

Json parse_json(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::kInvalidInput, "invalid JSON in " + origin);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) fail(ErrorCode::kIo, "read error on " + path);
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::kIo, "write error on " + path);
}

}  // namespace infolaw
