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

// Random search over mixture recipes scored by the loss-information law.

#ifndef INFOLAW_SEARCH_HPP_
#define INFOLAW_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "infolaw/core.hpp"
#include "infolaw/rng.hpp"

namespace infolaw {

enum class SearchConstraint {
  kMonotoneW5Zero,  // w_0 >= ... >= w_4, w_5 = 0
  kSimplexOnly,
};

// Uniform simplex point from normalized exponential spacings. The monotone
// mode draws five coordinates and sorts them in descending order.
MixtureRecipe<double> sample_recipe(CounterRng& rng, SearchConstraint constraint);

struct SearchOptions {
  std::size_t n_candidates = 100000;
  std::uint64_t seed = 0;
  SearchConstraint constraint = SearchConstraint::kMonotoneW5Zero;
  std::size_t top_k = 10;
  std::size_t workers = 1;

  void validate() const;
};

struct SearchSpec {
  ModelArch arch;
  double train_tokens;
  CorpusSpec<double> corpus;
  InfoLawParams<double> params;
  SearchOptions options;
};

struct ScoredRecipe {
  std::size_t index;  // candidate stream id
  MixtureRecipe<double> recipe;
  double info;
  double loss;
};

struct SearchResult {
  ScoredRecipe best;
  std::vector<ScoredRecipe> top;  // ascending loss, ties by index
};

// Candidate i is drawn from its own stream, so a larger budget evaluates a
// superset of a smaller one.
SearchResult search_optimal(const SearchSpec& spec);

struct RecipeSetting {
  ModelArch arch;
  double train_tokens;
};

struct RecipeReportRow {
  std::string model;
  double flops_per_token;
  double train_tokens;
  double source_tokens;
  MixtureRecipe<double> recipe;
  double info;
  double loss;
};

// One search per setting, all with the same candidate set.
std::vector<RecipeReportRow> recipe_report(const std::vector<RecipeSetting>& settings,
                                           const CorpusSpec<double>& corpus,
                                           const InfoLawParams<double>& params,
                                           const SearchOptions& options);

std::string search_constraint_name(SearchConstraint constraint);
SearchConstraint parse_search_constraint(const std::string& name);

}  // namespace infolaw

#endif  // INFOLAW_SEARCH_HPP_
