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

#include "infolaw/budget.hpp"
#include "infolaw/presets.hpp"
#include "infolaw/search.hpp"
#include "support.hpp"

using namespace infolaw;

namespace {

const CorpusSpec<double> kSource500(500e9, default_bucket_proportions());

SearchSpec spec_for(const char* label, double k, std::size_t n = 20000, std::size_t workers = 1) {
  SearchOptions o;
  o.n_candidates = n;
  o.workers = workers;
  return {find_arch(label), k, kSource500, paper_params(), o};
}

}  // namespace

TEST_CASE("sampled recipes satisfy their constraint") {
  for (std::uint64_t i = 0; i < 5000; ++i) {
    CounterRng rng(1, RngDomain::kRecipeSearch, i);
    const MixtureRecipe<double> m = sample_recipe(rng, SearchConstraint::kMonotoneW5Zero);
    CHECK(m.is_monotone());
    CHECK(m[5] == 0.0);
    CHECK(m.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
    const MixtureRecipe<double> s = sample_recipe(rng, SearchConstraint::kSimplexOnly);
    CHECK((s.weights() >= 0).all());
    CHECK(s.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CounterRng a(8, RngDomain::kRecipeSearch, 3), b(8, RngDomain::kRecipeSearch, 3);
  CHECK(sample_recipe(a, SearchConstraint::kMonotoneW5Zero) ==
        sample_recipe(b, SearchConstraint::kMonotoneW5Zero));
}

TEST_CASE("sorted simplex coordinates match order-statistics means") {
  // E[k-th largest of a uniform 5-simplex point] = (1/5) sum_{j>=k} 1/j.
  const int n = 100000;
  testing::Gen gen(41);
  BucketArrayd mean = BucketArrayd::Zero(), mean_sq = BucketArrayd::Zero();
  BucketArrayd oracle_mean = BucketArrayd::Zero();
  for (int i = 0; i < n; ++i) {
    CounterRng rng(2, RngDomain::kRecipeSearch, i);
    const BucketArrayd w = sample_recipe(rng, SearchConstraint::kMonotoneW5Zero).weights();
    mean += w / n;
    mean_sq += w.square() / n;
    std::vector<double> independent = gen.simplex(5);
    std::sort(independent.rbegin(), independent.rend());
    for (int d = 0; d < 5; ++d) oracle_mean[d] += independent[d] / n;
  }
  for (int k = 1; k <= 5; ++k) {
    double expected = 0;
    for (int j = k; j <= 5; ++j) expected += 1.0 / j;
    expected /= 5;
    const double se = std::sqrt((mean_sq[k - 1] - mean[k - 1] * mean[k - 1]) / n);
    CHECK(std::abs(mean[k - 1] - expected) < 3 * se);
    CHECK(std::abs(oracle_mean[k - 1] - expected) < 3 * se);
  }
}

TEST_CASE("top-heavy recipes win without repetition") {
  SearchSpec spec = spec_for("1.2B", 1e9, 2000);
  const SearchResult r = search_optimal(spec);
  for (const ScoredRecipe& s : r.top) CHECK(r.best.loss <= s.loss);
  CHECK(r.best.recipe[0] > 0.5);
  const double n = flops_per_token(spec.arch);
  BucketArrayd top;
  top << 1, 0, 0, 0, 0, 0;
  BucketArrayd tail;
  tail << 0.5, 0.1, 0.1, 0.1, 0.1, 0.1;
  CHECK(total_info(MixtureRecipe<double>(top), 1e9, kSource500, n, paper_params()) >
        total_info(MixtureRecipe<double>(tail), 1e9, kSource500, n, paper_params()));
}

TEST_CASE("search is exhaustive over its candidates") {
  SearchSpec spec = spec_for("1.2B", 300e9, 3000);
  const SearchResult r = search_optimal(spec);
  const double n = flops_per_token(spec.arch);
  for (std::uint64_t i = 0; i < spec.options.n_candidates; ++i) {
    CounterRng rng(spec.options.seed, RngDomain::kRecipeSearch, i);
    const auto recipe = sample_recipe(rng, spec.options.constraint);
    const double loss = predict_loss(total_info(recipe, 300e9, kSource500, n, paper_params()), paper_params());
    CHECK(r.best.loss <= loss);
    if (loss == r.best.loss) {
      CHECK(r.best.index <= i);
    }
  }
  CHECK(r.top.size() == 10);
  for (std::size_t j = 1; j < r.top.size(); ++j) CHECK(r.top[j - 1].loss <= r.top[j].loss);
}

TEST_CASE("larger budgets never do worse and workers do not matter") {
  const SearchResult small = search_optimal(spec_for("1.8B", 500e9, 5000));
  const SearchResult large = search_optimal(spec_for("1.8B", 500e9, 10000));
  CHECK(large.best.loss <= small.best.loss);
  const SearchResult threaded = search_optimal(spec_for("1.8B", 500e9, 10000, 6));
  CHECK(threaded.best.index == large.best.index);
  CHECK(threaded.best.recipe == large.best.recipe);
  CHECK(threaded.best.loss == large.best.loss);
}

TEST_CASE("optimal recipes diversify with more tokens") {
  const SearchResult k300 = search_optimal(spec_for("1.2B", 300e9, 20000, 4));
  const SearchResult k1000 = search_optimal(spec_for("1.2B", 1000e9, 20000, 4));
  CHECK(k300.best.recipe[0] > k1000.best.recipe[0]);
}

TEST_CASE("published 7B recipes rank as expected at 1000B tokens") {
  BucketArrayd r300, r1000;
  r300 << 0.548, 0.444, 0.004, 0.003, 0.002, 0;
  r1000 << 0.395, 0.387, 0.214, 0.003, 0.001, 0;
  const double n = flops_per_token(find_arch("7B"));
  const auto p = paper_params();
  const double loss300 = predict_loss(total_info(MixtureRecipe<double>::normalized(r300), 1000e9, kSource500, n, p), p);
  const double loss1000 = predict_loss(total_info(MixtureRecipe<double>::normalized(r1000), 1000e9, kSource500, n, p), p);
  CHECK(loss1000 <= loss300);
}

TEST_CASE("recipe report rows equal standalone searches") {
  SearchOptions o;
  o.n_candidates = 3000;
  const auto rows = recipe_report({{find_arch("1.2B"), 400e9}}, kSource500, paper_params(), o);
  REQUIRE(rows.size() == 1);
  const SearchResult r = search_optimal({find_arch("1.2B"), 400e9, kSource500, paper_params(), o});
  CHECK(rows[0].recipe == r.best.recipe);
  CHECK(rows[0].loss == r.best.loss);
  CHECK(rows[0].model == "1.2B");
  CHECK_THROWS_AS(recipe_report({}, kSource500, paper_params(), o), Error);
  o.n_candidates = 0;
  CHECK_THROWS_AS(search_optimal({find_arch("1.2B"), 400e9, kSource500, paper_params(), o}), Error);
}
