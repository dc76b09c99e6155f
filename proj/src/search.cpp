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

#include "infolaw/search.hpp"

#include <algorithm>
#include <numeric>

#include "infolaw/budget.hpp"
#include "infolaw/parallel.hpp"

namespace infolaw {

MixtureRecipe<double> sample_recipe(CounterRng& rng, SearchConstraint constraint) {
  BucketArrayd w = BucketArrayd::Zero();
  if (constraint == SearchConstraint::kMonotoneW5Zero) {
    for (int d = 0; d < kNumBuckets - 1; ++d) w[d] = rng.exponential();
    std::sort(w.data(), w.data() + kNumBuckets - 1, std::greater<>());
    w /= w.sum();
    return MixtureRecipe<double>(w, RecipeMode::kMonotone);
  }
  for (int d = 0; d < kNumBuckets; ++d) w[d] = rng.exponential();
  w /= w.sum();
  return MixtureRecipe<double>(w, RecipeMode::kSimplex);
}

void SearchOptions::validate() const {
  if (n_candidates < 1) fail(ErrorCode::kInvalidParameter, "n_candidates must be at least 1");
  if (top_k < 1) fail(ErrorCode::kInvalidParameter, "top_k must be at least 1");
}

SearchResult search_optimal(const SearchSpec& spec) {
  spec.options.validate();
  spec.params.validate();
  spec.arch.validate();
  if (!(spec.train_tokens > 0)) fail(ErrorCode::kInvalidInput, "K must be positive");
  const double lambda = spec.params.lambda(flops_per_token(spec.arch));
  const std::size_t n = spec.options.n_candidates;

  std::vector<BucketArrayd> weights(n);
  std::vector<double> infos(n), losses(n);
  parallel_for(n, spec.options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(spec.options.seed, RngDomain::kRecipeSearch, i);
      const MixtureRecipe<double> recipe = sample_recipe(rng, spec.options.constraint);
      weights[i] = recipe.weights();
      infos[i] = total_info_at_rate(recipe, spec.train_tokens, spec.corpus, lambda,
                                    spec.params.theta, spec.params.normalization);
      losses[i] = predict_loss(infos[i], spec.params);
    }
  });

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t k = std::min(spec.options.top_k, n);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return losses[a] < losses[b] || (losses[a] == losses[b] && a < b);
                    });
  const RecipeMode mode = spec.options.constraint == SearchConstraint::kMonotoneW5Zero
                              ? RecipeMode::kMonotone
                              : RecipeMode::kSimplex;
  std::vector<ScoredRecipe> top;
  top.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = order[j];
    top.push_back({i, MixtureRecipe<double>(weights[i], mode), infos[i], losses[i]});
  }
  return {top.front(), std::move(top)};
}

std::vector<RecipeReportRow> recipe_report(const std::vector<RecipeSetting>& settings,
                                           const CorpusSpec<double>& corpus,
                                           const InfoLawParams<double>& params,
                                           const SearchOptions& options) {
  if (settings.empty()) fail(ErrorCode::kInvalidInput, "recipe report needs at least one setting");
  std::vector<RecipeReportRow> rows;
  rows.reserve(settings.size());
  for (const RecipeSetting& setting : settings) {
    const SearchResult result =
        search_optimal({setting.arch, setting.train_tokens, corpus, params, options});
    rows.push_back({setting.arch.label, flops_per_token(setting.arch), setting.train_tokens,
                    corpus.source_tokens, result.best.recipe, result.best.info,
                    result.best.loss});
  }
  return rows;
}

std::string search_constraint_name(SearchConstraint constraint) {
  return constraint == SearchConstraint::kMonotoneW5Zero ? "monotone_w5_zero" : "simplex_only";
}

SearchConstraint parse_search_constraint(const std::string& name) {
  if (name == "monotone_w5_zero") return SearchConstraint::kMonotoneW5Zero;
  if (name == "simplex_only") return SearchConstraint::kSimplexOnly;
  fail(ErrorCode::kInvalidParameter, "unknown search constraint: " + name);
}

}  // namespace infolaw
