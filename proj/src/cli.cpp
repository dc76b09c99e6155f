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

#include "infolaw/cli.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "infolaw/budget.hpp"
#include "infolaw/fitting.hpp"
#include "infolaw/io.hpp"
#include "infolaw/pack.hpp"
#include "infolaw/presets.hpp"
#include "infolaw/search.hpp"
#include "infolaw/synth.hpp"

namespace infolaw {
namespace {

constexpr const char* kEnvPrefix = "INFOLAW_";

std::string upper(std::string text) {
  for (char& c : text) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return text;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::kInvalidInput, "not a number: '" + item + "'");
    }
  }
  return values;
}

BucketArrayd parse_buckets(const std::string& text) {
  const std::vector<double> values = parse_numbers(text);
  if (values.size() != kNumBuckets) fail(ErrorCode::kInvalidInput, "expected six comma-separated values");
  return Eigen::Map<const BucketArrayd>(values.data());
}

// Settings shared by every subcommand, after merging --config.
struct Project {
  std::uint64_t seed = 0;
  InfoLawParams<double> params = paper_params();
  bool params_loaded = false;
  BucketArrayd proportions = default_bucket_proportions();
  std::optional<double> source_tokens;
  std::map<std::string, BucketArrayd> presets;  // upper-case names
  std::size_t workers = 1;

  MixtureRecipe<double> recipe(const std::string& text,
                               RecipeMode mode = RecipeMode::kSimplex) const {
    if (text.find(',') != std::string::npos) return recipe_from_json(to_json(parse_buckets(text)), mode);
    const auto custom = presets.find(upper(text));
    if (custom != presets.end()) return MixtureRecipe<double>(custom->second, mode);
    return preset_recipe(text);
  }
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::string out_path = "-";

  void emit(const std::string& text) const {
    if (out_path == "-") {
      out << text;
    } else {
      write_file(out_path, text);
    }
  }
  void emit(const Json& j) const { emit(j.dump(2) + "\n"); }

  std::string read(const std::string& path) const {
    if (path != "-") return read_file(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }

  std::vector<RunRecord> runs(const std::string& path) const {
    std::istringstream stream(read(path));
    std::vector<RunRecord> runs = read_run_records(stream);
    if (runs.empty()) fail(ErrorCode::kInvalidInput, "no run records in " + path);
    return runs;
  }
};

struct FitFlags {
  std::size_t samples = 100000;
  std::size_t refine_samples = 20000;
  double tie_band = 0.01;
  std::string grouping = "global";
  std::string lambda_form = "logarithmic";
  std::string normalization = "logarithmic";
  double r2_floor = 0.5;
  bool checkpoints = false;
  std::vector<double> theta_range{0.05, 3.0};
  std::vector<double> lambda_range{0.01, 10.0};

  void add_to(CLI::App* sub) {
    sub->add_option("--samples", samples, "random search candidates")->capture_default_str();
    sub->add_option("--refine-samples", refine_samples, "local refinement steps per start")
        ->capture_default_str();
    sub->add_option("--tie-band", tie_band, "objective band ranked by log-log R^2")
        ->capture_default_str();
    sub->add_option("--grouping", grouping, "global or per_model")->capture_default_str();
    sub->add_option("--lambda-form", lambda_form, "logarithmic, exponential or power")
        ->capture_default_str();
    sub->add_option("--normalization", normalization, "logarithmic, constant or power:<p>")
        ->capture_default_str();
    sub->add_option("--r2-floor", r2_floor, "minimum log-log R^2 of the loss law")
        ->capture_default_str();
    sub->add_flag("--checkpoints", checkpoints, "expand checkpoints into virtual runs");
    sub->add_option("--theta-range", theta_range, "lo,hi")->expected(2)->delimiter(',');
    sub->add_option("--lambda-range", lambda_range, "lo,hi")->expected(2)->delimiter(',');
  }

  FitConfig config(const Project& project) const {
    FitConfig c;
    c.n_samples = samples;
    c.refine_samples = refine_samples;
    c.spearman_tie_band = tie_band;
    c.grouping = parse_grouping(grouping);
    c.lambda_form = parse_lambda_form(lambda_form);
    c.normalization = parse_normalization(normalization);
    c.r2_floor = r2_floor;
    c.use_checkpoints = checkpoints;
    c.theta_range = {theta_range.at(0), theta_range.at(1)};
    c.lambda_range = {lambda_range.at(0), lambda_range.at(1)};
    c.seed = project.seed;
    c.workers = project.workers;
    return c;
  }
};

Json stats_json(const BucketStats<double>& stats) {
  Json buckets = Json::array();
  for (int d = 0; d < kNumBuckets; ++d) {
    buckets.push_back({{"bucket", d},
                       {"planned", stats.planned[d]},
                       {"source", stats.source[d]},
                       {"unique", stats.unique[d]},
                       {"repetition", std::isfinite(stats.repetition[d]) ? Json(stats.repetition[d])
                                                                          : Json(nullptr)}});
  }
  return buckets;
}

void set_env_names(CLI::App& app) {
  for (CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || opt->get_lnames().empty()) continue;
    std::string env = kEnvPrefix + upper(opt->get_lnames().front());
    std::replace(env.begin(), env.end(), '-', '_');
    opt->envname(env);
  }
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) set_env_names(*sub);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLawQuality: return kExitLawQuality;
    case ErrorCode::kIo: return kExitIo;
    default: return kExitInvalid;
  }
}

void report_error(std::ostream& err, std::string_view code, int exit_code,
                  const std::string& message) {
  const Json j = {{"error", {{"code", code}, {"exit_code", exit_code}, {"message", message}}}};
  err << j.dump() << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
  CLI::App app("Loss prediction, recipe search and packing for quality-bucketed data mixtures",
               "infolaw");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  std::string params_source = "paper";
  std::string out_path = "-";
  std::size_t workers = 1;
  CLI::Option* seed_opt = app.add_option("--seed", seed, "random seed")->capture_default_str();
  CLI::Option* params_opt =
      app.add_option("--params", params_source, "\"paper\" or a parameter JSON file")
          ->capture_default_str();
  CLI::Option* workers_opt =
      app.add_option("--workers", workers, "worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--config", config_path, "project configuration JSON");
  app.add_option("--out", out_path, "output path, - for stdout")->capture_default_str();

  // info
  CLI::App* info = app.add_subcommand("info", "information and predicted loss of one configuration");
  std::string recipe_text, arch_label, proportions_text;
  double train_tokens = 0, source_tokens = 0;
  info->add_option("--recipe", recipe_text, "preset name or six comma-separated weights")->required();
  info->add_option("--K", train_tokens, "training tokens")->required();
  CLI::Option* info_s = info->add_option("--S", source_tokens, "source tokens");
  info->add_option("--arch", arch_label, "model label")->required();
  CLI::Option* info_b = info->add_option("--proportions", proportions_text, "bucket shares B");

  // predict
  CLI::App* predict = app.add_subcommand("predict", "predicted loss for recipes, models and budgets");
  std::string predict_runs;
  std::vector<std::string> predict_recipes, predict_archs;
  std::vector<double> predict_tokens;
  double source_ratio = 1.0;
  predict->add_option("--runs", predict_runs, "run-record JSONL to predict instead of a grid");
  predict->add_option("--recipe", predict_recipes, "recipes (repeatable)");
  predict->add_option("--arch", predict_archs, "model labels (repeatable)")->delimiter(',');
  predict->add_option("--K", predict_tokens, "training tokens (repeatable)")->delimiter(',');
  CLI::Option* predict_s = predict->add_option("--S", source_tokens, "source tokens");
  predict->add_option("--source-ratio", source_ratio, "S / K when --S is not given")
      ->capture_default_str();
  CLI::Option* predict_b = predict->add_option("--proportions", proportions_text, "bucket shares B");

  // fit
  CLI::App* fit = app.add_subcommand("fit", "fit the law to run records");
  std::string runs_path = "-";
  FitFlags fit_flags;
  fit->add_option("--runs", runs_path, "run-record JSONL, - for stdin")->capture_default_str();
  fit_flags.add_to(fit);

  // search
  CLI::App* search = app.add_subcommand("search", "optimal recipe per (model, token budget)");
  std::vector<std::string> search_archs;
  std::vector<double> search_tokens;
  std::size_t candidates = 100000, top_k = 10;
  std::string constraint = "monotone_w5_zero", format = "json";
  search->add_option("--arch", search_archs, "model labels")->required()->delimiter(',');
  search->add_option("--K", search_tokens, "training tokens")->required()->delimiter(',');
  CLI::Option* search_s = search->add_option("--S", source_tokens, "source tokens (default 500e9)");
  CLI::Option* search_b = search->add_option("--proportions", proportions_text, "bucket shares B");
  search->add_option("--candidates", candidates, "sampled recipes")->capture_default_str();
  search->add_option("--constraint", constraint, "monotone_w5_zero or simplex_only")
      ->capture_default_str();
  search->add_option("--top-k", top_k, "best candidates listed per setting")->capture_default_str();
  search->add_option("--format", format, "json or csv")->capture_default_str();

  // budget
  CLI::App* budget = app.add_subcommand("budget", "overtrain degree, extrapolated tokens, learning rate");
  std::string target_label;
  budget->add_option("--arch", arch_label, "model label")->required();
  budget->add_option("--tokens", train_tokens, "training tokens D")->required();
  budget->add_option("--target", target_label, "model to extrapolate to at the same overtrain degree");

  // pack
  CLI::App* pack_cmd = app.add_subcommand("pack", "bucket, plan and pack a scored JSONL corpus");
  std::string input_path, shard_dir;
  IngestOptions ingest;
  bool count_text = false;
  std::size_t shard_size = 1000000;
  pack_cmd->add_option("--input", input_path, "document JSONL, - for stdin")->required();
  pack_cmd->add_option("--recipe", recipe_text, "preset name or six weights")->required();
  pack_cmd->add_option("--K", train_tokens, "tokens to pack")->required();
  CLI::Option* pack_b = pack_cmd->add_option("--proportions", proportions_text, "bucket shares B");
  pack_cmd->add_option("--id-key", ingest.id_key)->capture_default_str();
  pack_cmd->add_option("--tokens-key", ingest.tokens_key)->capture_default_str();
  pack_cmd->add_option("--score-key", ingest.score_key)->capture_default_str();
  pack_cmd->add_option("--text-key", ingest.text_key)->capture_default_str();
  pack_cmd->add_option("--max-malformed", ingest.max_malformed_fraction,
                       "tolerated fraction of malformed lines")
      ->capture_default_str();
  pack_cmd->add_flag("--keep-payload", ingest.keep_payload, "copy each input line into the shards");
  pack_cmd->add_flag("--count-text-tokens", count_text,
                     "count whitespace-separated words of the text field when the token count is missing");
  pack_cmd->add_option("--shard-dir", shard_dir, "directory for shard-NNNNN.jsonl files");
  pack_cmd->add_option("--shard-size", shard_size, "copies per shard file")->capture_default_str();

  // synth
  CLI::App* synth = app.add_subcommand("synth", "synthetic run records from known parameters");
  std::vector<std::string> synth_archs, synth_recipes{"HQ", "MQ", "LQ"};
  double overtrain = 3.6, noise = 0;
  std::size_t n_runs = 0;
  synth->add_option("--archs", synth_archs, "model labels (default 252M to 1.2B)")->delimiter(',');
  synth->add_option("--recipes", synth_recipes, "recipes")->delimiter(';')->capture_default_str();
  synth->add_option("--overtrain", overtrain, "overtrain degree m")->capture_default_str();
  synth->add_option("--source-ratio", source_ratio, "S / K")->capture_default_str();
  synth->add_option("--noise", noise, "relative sd of loss noise")->capture_default_str();
  synth->add_option("--runs", n_runs, "keep only the first N runs (0 = all)");
  CLI::Option* synth_b = synth->add_option("--proportions", proportions_text, "bucket shares B");

  // compare-laws
  CLI::App* compare = app.add_subcommand("compare-laws", "compute power law versus the information law");
  double fit_fraction = 0.6;
  std::string summary_path;
  FitFlags compare_flags;
  compare->add_option("--runs", runs_path, "run-record JSONL, - for stdin")->capture_default_str();
  compare->add_option("--fit-fraction", fit_fraction, "cheapest share of runs used for fitting")
      ->capture_default_str();
  compare->add_option("--summary", summary_path, "write held-out error summary JSON here");
  compare_flags.add_to(compare);

  // export
  CLI::App* export_cmd = app.add_subcommand("export", "plot data as CSV");
  std::string kind, fit_path;
  FitFlags export_flags;
  export_cmd->add_option("--kind", kind, "collapse, lambda or compare")
      ->required()
      ->check(CLI::IsMember({"collapse", "lambda", "compare"}));
  export_cmd->add_option("--fit", fit_path, "fit result JSON (collapse, lambda)");
  export_cmd->add_option("--runs", runs_path, "run-record JSONL (compare)");
  export_flags.add_to(export_cmd);

  set_env_names(app);

  std::vector<std::string> argv_storage{"infolaw"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      CLI::App* target = &app;
      for (CLI::App* sub : app.get_subcommands()) target = sub;
      out << target->help();
      return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      report_error(err, "usage", kExitInvalid, e.what());
      return kExitInvalid;
    }

    Project project;
    if (!config_path.empty()) {
      const Json config = parse_json(read_file(config_path), config_path);
      if (!config.is_object()) fail(ErrorCode::kInvalidInput, "configuration must be a JSON object");
      if (config.contains("seed") && seed_opt->count() == 0) {
        seed = config["seed"].get<std::uint64_t>();
      }
      if (config.contains("workers") && workers_opt->count() == 0) {
        workers = config["workers"].get<std::size_t>();
      }
      if (config.contains("params") && params_opt->count() == 0) {
        if (config["params"].is_object()) {
          project.params = params_from_json(config["params"]);
          project.params_loaded = true;
        } else {
          params_source = config["params"].get<std::string>();
        }
      }
      if (config.contains("proportions")) project.proportions = bucket_array_from_json(config["proportions"]);
      if (config.contains("source_tokens")) project.source_tokens = config["source_tokens"].get<double>();
      if (config.contains("presets")) {
        for (const auto& [name, weights] : config["presets"].items()) {
          const BucketArrayd w = bucket_array_from_json(weights);
          MixtureRecipe<double> check(w);  // validates
          project.presets[upper(name)] = w;
        }
      }
    }
    project.seed = seed;
    project.workers = workers;
    if (!project.params_loaded) project.params = load_params(params_source);
    if (!proportions_text.empty()) project.proportions = parse_buckets(proportions_text);
    (void)info_b; (void)predict_b; (void)search_b; (void)pack_b; (void)synth_b;

    const Io io{in, out, out_path};
    const InfoLawParams<double>& params = project.params;

    auto source_or = [&](CLI::Option* opt, std::optional<double> fallback) -> double {
      if (opt->count() > 0) return source_tokens;
      if (project.source_tokens) return *project.source_tokens;
      if (fallback) return *fallback;
      fail(ErrorCode::kInvalidInput, "source tokens --S are required");
    };

    if (app.got_subcommand(info)) {
      const ModelArch& arch = find_arch(arch_label);
      const MixtureRecipe<double> recipe = project.recipe(recipe_text);
      const CorpusSpec<double> corpus(source_or(info_s, std::nullopt), project.proportions);
      const double n = flops_per_token(arch);
      const double value = total_info(recipe, train_tokens, corpus, n, params);
      io.emit(Json{{"arch", arch.label},
                   {"flops_per_token", n},
                   {"lambda", params.lambda(n)},
                   {"train_tokens", train_tokens},
                   {"source_tokens", corpus.source_tokens},
                   {"recipe", to_json(recipe.weights())},
                   {"buckets", stats_json(layermix_stats(recipe, train_tokens, corpus))},
                   {"info", value},
                   {"loss", predict_loss(value, params)}});
    } else if (app.got_subcommand(predict)) {
      Json rows = Json::array();
      if (!predict_runs.empty()) {
        for (const RunRecord& run : io.runs(predict_runs)) {
          const double n = flops_per_token(run.arch);
          const double value = total_info(run.recipe, run.train_tokens, run.corpus, n, params);
          const double loss = predict_loss(value, params);
          rows.push_back({{"label", run.arch.label},
                          {"flops_per_token", n},
                          {"train_tokens", run.train_tokens},
                          {"info", value},
                          {"observed", run.loss},
                          {"predicted", loss},
                          {"residual", run.loss - loss}});
        }
      } else {
        if (predict_recipes.empty() || predict_archs.empty() || predict_tokens.empty()) {
          fail(ErrorCode::kInvalidInput, "predict needs --runs or --recipe, --arch and --K");
        }
        for (const std::string& label : predict_archs) {
          const ModelArch& arch = find_arch(label);
          const double n = flops_per_token(arch);
          for (const std::string& text : predict_recipes) {
            const MixtureRecipe<double> recipe = project.recipe(text);
            for (double k : predict_tokens) {
              const CorpusSpec<double> corpus(source_or(predict_s, source_ratio * k),
                                              project.proportions);
              const double value = total_info(recipe, k, corpus, n, params);
              rows.push_back({{"arch", arch.label},
                              {"recipe", text},
                              {"weights", to_json(recipe.weights())},
                              {"flops_per_token", n},
                              {"train_tokens", k},
                              {"source_tokens", corpus.source_tokens},
                              {"info", value},
                              {"loss", predict_loss(value, params)}});
            }
          }
        }
      }
      io.emit(rows);
    } else if (app.got_subcommand(fit)) {
      const std::vector<RunRecord> runs = io.runs(runs_path);
      io.emit(to_json(fit_full_pipeline(runs, fit_flags.config(project))));
    } else if (app.got_subcommand(search)) {
      SearchOptions options;
      options.n_candidates = candidates;
      options.seed = project.seed;
      options.constraint = parse_search_constraint(constraint);
      options.top_k = top_k;
      options.workers = project.workers;
      if (format != "json" && format != "csv") fail(ErrorCode::kInvalidParameter, "format must be json or csv");
      const CorpusSpec<double> corpus(source_or(search_s, 500e9), project.proportions);
      std::vector<RecipeReportRow> rows;
      Json top = Json::array();
      for (const std::string& label : search_archs) {
        const ModelArch& arch = find_arch(label);
        for (double k : search_tokens) {
          const SearchResult result = search_optimal({arch, k, corpus, params, options});
          rows.push_back({arch.label, flops_per_token(arch), k, corpus.source_tokens,
                          result.best.recipe, result.best.info, result.best.loss});
          top.push_back(to_json(result)["top"]);
        }
      }
      if (format == "csv") {
        io.emit(recipe_report_csv(rows));
      } else {
        Json report = to_json(rows);
        for (std::size_t i = 0; i < report.size(); ++i) report[i]["top"] = top[i];
        io.emit(Json{{"seed", project.seed},
                     {"candidates", candidates},
                     {"constraint", constraint},
                     {"rows", report}});
      }
    } else if (app.got_subcommand(budget)) {
      const ModelArch& arch = find_arch(arch_label);
      const ComputeBudget b = compute_budget(flops_per_token(arch), train_tokens);
      const OptimalAllocation opt = chinchilla_optimal(b.compute);
      Json result{{"arch", arch.label},
                  {"flops_per_token", b.flops_per_token},
                  {"train_tokens", b.tokens},
                  {"compute", b.compute},
                  {"n_opt", opt.flops_per_token},
                  {"d_opt", opt.tokens},
                  {"overtrain", b.overtrain},
                  {"learning_rate", learning_rate(b.compute)}};
      if (!target_label.empty()) {
        const ModelArch& target = find_arch(target_label);
        const double tokens = extrapolate_tokens(b.overtrain, target);
        const double n = flops_per_token(target);
        result["target"] = {{"arch", target.label},
                            {"flops_per_token", n},
                            {"train_tokens", tokens},
                            {"compute", n * tokens},
                            {"learning_rate", learning_rate(n * tokens)}};
      }
      io.emit(result);
    } else if (app.got_subcommand(pack_cmd)) {
      if (count_text) {
        ingest.token_counter = [](std::string_view text) {
          std::uint64_t words = 0;
          bool inside = false;
          for (char c : text) {
            const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
            if (!space && !inside) ++words;
            inside = !space;
          }
          return words;
        };
      }
      IngestResult ingested;
      if (input_path == "-") {
        ingested = ingest_jsonl(in, ingest);
      } else {
        ingested = ingest_jsonl(input_path, ingest);
      }
      for (const std::string& w : ingested.warnings) {
        err << Json{{"warning", w}}.dump() << '\n';
      }
      const BucketedCorpus corpus = assign_buckets(std::move(ingested.docs), project.proportions);
      const PackPlan plan = plan_pack(project.recipe(recipe_text), train_tokens, corpus);
      const PackResult packed = pack(corpus, plan, project.seed, project.workers);
      if (!shard_dir.empty()) {
        if (shard_size < 1) fail(ErrorCode::kInvalidParameter, "shard size must be positive");
        std::error_code ec;
        std::filesystem::create_directories(shard_dir, ec);
        if (ec) fail(ErrorCode::kIo, "cannot create " + shard_dir + ": " + ec.message());
        std::ofstream shard;
        std::size_t in_shard = 0, shard_index = 0;
        auto open_next = [&] {
          if (shard.is_open()) shard.close();
          char name[32];
          std::snprintf(name, sizeof name, "shard-%05zu.jsonl", shard_index++);
          const std::string path = (std::filesystem::path(shard_dir) / name).string();
          shard.open(path, std::ios::binary);
          if (!shard) fail(ErrorCode::kIo, "cannot write " + path);
          in_shard = 0;
        };
        open_next();
        for_each_copy(corpus, packed, [&](const ScoredDocument& doc, std::uint32_t copy) {
          if (in_shard == shard_size) open_next();
          shard << "{\"id\":" << Json(doc.id).dump() << ",\"copy_index\":" << copy;
          if (doc.payload) shard << ",\"payload\":" << *doc.payload;
          shard << "}\n";
          ++in_shard;
        });
        shard.close();
        if (!shard) fail(ErrorCode::kIo, "write error in " + shard_dir);
      }
      Json manifest = to_json(packed.manifest);
      manifest["ingest"] = {{"lines", ingested.lines}, {"malformed", ingested.malformed}};
      io.emit(manifest);
    } else if (app.got_subcommand(synth)) {
      SyntheticSpec spec = reference_fit_spec(params, noise, project.seed);
      if (!synth_archs.empty()) {
        spec.archs.clear();
        for (const std::string& label : synth_archs) spec.archs.push_back(find_arch(label));
      }
      spec.recipes.clear();
      for (const std::string& text : synth_recipes) spec.recipes.push_back(project.recipe(text));
      spec.overtrain = overtrain;
      spec.source_ratio = source_ratio;
      spec.proportions = project.proportions;
      std::vector<RunRecord> runs = generate_runs(spec);
      if (n_runs > runs.size()) {
        fail(ErrorCode::kInvalidInput, "requested " + std::to_string(n_runs) + " runs but the grid has " +
                                           std::to_string(runs.size()));
      }
      if (n_runs > 0) runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(n_runs), runs.end());
      std::ostringstream text;
      write_run_records(text, runs);
      io.emit(text.str());
    } else if (app.got_subcommand(compare)) {
      const LawComparison result =
          compare_laws(io.runs(runs_path), compare_flags.config(project), fit_fraction);
      io.emit(comparison_csv(result));
      if (!summary_path.empty()) {
        const Json summary{{"compute_law",
                            {{"p", result.p},
                             {"q", result.q},
                             {"heldout_mean_error", result.compute_law_mean_error},
                             {"heldout_max_error", result.compute_law_max_error}}},
                           {"infolaw",
                            {{"params", to_json(result.infolaw.params)},
                             {"heldout_mean_error", result.infolaw_mean_error},
                             {"heldout_max_error", result.infolaw_max_error}}}};
        write_file(summary_path, summary.dump(2) + "\n");
      }
    } else if (app.got_subcommand(export_cmd)) {
      if (kind == "compare") {
        if (runs_path.empty()) fail(ErrorCode::kInvalidInput, "--runs is required for compare");
        io.emit(comparison_csv(compare_laws(io.runs(runs_path), export_flags.config(project))));
      } else {
        if (fit_path.empty()) fail(ErrorCode::kInvalidInput, "--fit is required for " + kind);
        const FitResult result = fit_result_from_json(parse_json(io.read(fit_path), fit_path));
        io.emit(kind == "collapse" ? collapse_csv(result.diagnostics) : lambda_csv(result));
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    report_error(err, error_code_name(e.code()), code, e.what());
    return code;
  } catch (const Json::exception& e) {
    report_error(err, "invalid_input", kExitInvalid, e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    report_error(err, "internal", kExitInvalid, e.what());
    return kExitInvalid;
  }
}

}  // namespace infolaw
