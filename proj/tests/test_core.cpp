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

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "infolaw/budget.hpp"
#include "infolaw/core.hpp"
#include "infolaw/presets.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace infolaw;

namespace {

const CorpusSpec<double> kCorpus106(106e9, default_bucket_proportions());

// Instantaneous gain integrated numerically.
double quadrature_gain(double t, double lambda, double k, const Normalization<double>& norm) {
  const double scale = norm.mode == NormalizationMode::kLogarithmic ? std::log(k)
                       : norm.mode == NormalizationMode::kConstant  ? 1.0
                                                                     : std::pow(k, norm.exponent);
  auto density = [&](double s) { return lambda * std::exp(-lambda * s / scale); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, t, 20, 1e-14);
}

}  // namespace

TEST_CASE("quality density starts at one and decreases") {
  for (double theta : {0.1, 0.922, 3.0}) {
    CHECK(quality_density(0, theta) == 1.0);
    for (int d = 1; d < kNumBuckets; ++d) {
      CHECK(quality_density(d, theta) < quality_density(d - 1, theta));
    }
  }
  CHECK(quality_density(1, 0.922) == doctest::Approx(oracle::kDensityBucket1).epsilon(1e-15));
  CHECK_THROWS_AS(quality_density(0, 0.0), Error);
  CHECK_THROWS_AS(quality_density(6, 1.0), Error);
}

TEST_CASE("lambda curve rejects negative rates") {
  CHECK(lambda_of_n(oracle::kFlops1p2B, 0.140, 0.018) ==
        doctest::Approx(oracle::kLambda1p2B).epsilon(1e-15));
  try {
    lambda_of_n(1e9, -0.1, 0.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonpositiveRate);
  }
  LambdaCurve<double> power{LambdaForm::kPower, 2.0, 0.5, 0.0};
  CHECK(power(16.0) == doctest::Approx(8.0));
  LambdaCurve<double> expo{LambdaForm::kExponential, 3.0, 1e-9, 0.0};
  CHECK(expo(1e9) == doctest::Approx(3.0 * (1 - std::exp(-1.0))));
}

TEST_CASE("cumulative gain matches quadrature in every normalization") {
  testing::Gen gen(11);
  const Normalization<double> modes[] = {Normalization<double>::logarithmic(),
                                         Normalization<double>::constant(),
                                         Normalization<double>::power(0.3)};
  for (const auto& norm : modes) {
    for (int i = 0; i < 100; ++i) {
      const double t = gen.log_uniform(0.01, 50);
      const double lambda = gen.log_uniform(0.01, 10);
      const double k = gen.log_uniform(1e6, 1e13);
      const double want = quadrature_gain(t, lambda, k, norm);
      CHECK(testing::rel_err(cumulative_gain(t, lambda, k, norm, 1.0), want) < 1e-6);
    }
  }
}

TEST_CASE("cumulative gain is monotone in T and bounded by ln K") {
  testing::Gen gen(12);
  const auto norm = Normalization<double>::logarithmic();
  for (int i = 0; i < 200; ++i) {
    const double lambda = gen.log_uniform(0.01, 10);
    const double k = gen.log_uniform(1e6, 1e13);
    double previous = 0;
    for (double t = 0; t < 200; t += gen.uniform(0.1, 20)) {
      const double g = cumulative_gain(t, lambda, k, norm, 1.0);
      CHECK(g >= previous);
      CHECK(g <= std::log(k) * (1 + 1e-15));
      previous = g;
    }
  }
}

TEST_CASE("layermix repetition anchors") {
  const auto hq = layermix_stats(preset_recipe("HQ"), 106e9, kCorpus106);
  CHECK(hq.repetition[0] == 16.0);
  const auto mq = layermix_stats(preset_recipe("MQ"), 106e9, kCorpus106);
  CHECK(mq.repetition[0] == doctest::Approx(9.6).epsilon(1e-14));
}

TEST_CASE("layermix conserves tokens and bounds unique tokens by supply") {
  testing::Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    const MixtureRecipe<double> recipe(gen.recipe_weights());
    const double k = gen.log_uniform(1e8, 1e12);
    const CorpusSpec<double> corpus(gen.log_uniform(1e8, 1e12), default_bucket_proportions());
    const auto stats = layermix_stats(recipe, k, corpus);
    CHECK(std::abs(stats.planned.sum() - k) <= 1.0);
    CHECK((stats.unique <= stats.source).all());
    CHECK((stats.repetition >= 1.0).all());
  }
}

TEST_CASE("empty recipe buckets contribute nothing") {
  BucketArrayd w;
  w << 0.5, 0.5, 0, 0, 0, 0;
  const MixtureRecipe<double> recipe(w);
  const auto stats = layermix_stats(recipe, 1e9, kCorpus106);
  CHECK(stats.repetition[2] == 1.0);
  CHECK(stats.unique[2] == 0.0);

  BucketArrayd b;
  b << 0.1, 0.2, 0.2, 0.2, 0.3, 0.0;
  BucketArrayd w5 = BucketArrayd::Constant(1.0 / 6);
  const auto starved = layermix_stats(MixtureRecipe<double>(w5), 1e9, CorpusSpec<double>(1e10, b));
  CHECK(std::isinf(starved.repetition[5]));
  CHECK(starved.unique[5] == 0.0);
}

TEST_CASE("info and loss match the high-precision oracle") {
  const auto params = paper_params();
  const double n = flops_per_token(find_arch("1.2B"));
  const double hq = total_info(preset_recipe("HQ"), 106e9, kCorpus106, n, params);
  CHECK(testing::rel_err(hq, oracle::kInfoHq1p2B) < 1e-12);
  CHECK(testing::rel_err(predict_loss(hq, params), oracle::kLossHq1p2B) < 1e-12);
  const double mq = total_info(preset_recipe("MQ"), 106e9, kCorpus106, n, params);
  CHECK(testing::rel_err(mq, oracle::kInfoMq1p2B) < 1e-12);
  CHECK(testing::rel_err(predict_loss(mq, params), oracle::kLossMq1p2B) < 1e-12);

  auto constant = params;
  constant.normalization = Normalization<double>::constant();
  CHECK(testing::rel_err(total_info(preset_recipe("HQ"), 106e9, kCorpus106, n, constant),
                         oracle::kInfoHq1p2BConstant) < 1e-12);
  auto power = params;
  power.normalization = Normalization<double>::power(0.5);
  CHECK(testing::rel_err(total_info(preset_recipe("HQ"), 106e9, kCorpus106, n, power),
                         oracle::kInfoHq1p2BPowerHalf) < 1e-12);

  const CorpusSpec<double> abundant(500e9, default_bucket_proportions());
  CHECK(testing::rel_err(total_info(preset_recipe("HQ"), 300e9, abundant,
                                    flops_per_token(find_arch("7.7B")), params),
                         oracle::kInfoHq7p7BAbundant) < 1e-12);
}

TEST_CASE("formulas evaluate in extended precision") {
  InfoLawParams<long double> params;
  const auto p = paper_params();
  params.theta = p.theta;
  params.lambda = {LambdaForm::kLogarithmic, 0.140L, 0.018L, 0};
  params.alpha = p.alpha;
  params.beta = p.beta;
  BucketArray<long double> w;
  w << 0.80L, 0.10L, 0.03L, 0.03L, 0.02L, 0.02L;
  const CorpusSpec<long double> corpus(106e9L, default_bucket_proportions().cast<long double>());
  const long double info = total_info(MixtureRecipe<long double>(w), 106e9L, corpus,
                                      static_cast<long double>(oracle::kFlops1p2B), params);
  CHECK(testing::rel_err(static_cast<double>(info), oracle::kInfoHq1p2B) < 1e-14);
}

TEST_CASE("total info is monotone in lambda and in K without repetition") {
  testing::Gen gen(14);
  const auto norm = Normalization<double>::logarithmic();
  for (int i = 0; i < 200; ++i) {
    const MixtureRecipe<double> recipe(gen.recipe_weights());
    const CorpusSpec<double> corpus(1e12, default_bucket_proportions());
    const double theta = gen.uniform(0.1, 2);
    double previous = 0;
    for (double lambda = 0.01; lambda < 10; lambda *= 1.7) {
      const double v = total_info_at_rate(recipe, 1e10, corpus, lambda, theta, norm);
      CHECK(v >= previous);
      previous = v;
    }
    // No bucket repeats while K w_d <= S_d for every used bucket.
    double k_max = 1e300;
    for (int d = 0; d < kNumBuckets; ++d) {
      if (recipe[d] > 0) k_max = std::min(k_max, corpus.bucket_tokens()[d] / recipe[d]);
    }
    previous = 0;
    for (double k = 1e6; k <= k_max; k *= 2.3) {
      const double v = total_info_at_rate(recipe, k, corpus, 1.0, theta, norm);
      CHECK(v >= previous);
      previous = v;
    }
  }
}

TEST_CASE("recipe and corpus validation") {
  BucketArrayd w;
  w << 0.5, 0.6, 0, 0, 0, 0;
  CHECK_THROWS_AS(MixtureRecipe<double>{w}, Error);
  w << 0.2, 0.3, 0.5, 0, 0, 0;
  CHECK_NOTHROW(MixtureRecipe<double>{w});
  CHECK_THROWS_AS(MixtureRecipe<double>(w, RecipeMode::kMonotone), Error);
  w << 0.548, 0.444, 0.004, 0.003, 0.002, 0;  // printed to three decimals
  CHECK_THROWS_AS(MixtureRecipe<double>{w}, Error);
  CHECK(MixtureRecipe<double>::normalized(w).weights().sum() == doctest::Approx(1.0));
  BucketArrayd b = default_bucket_proportions();
  b[0] = 0;
  b[5] = 0.25;
  CHECK_THROWS_AS(CorpusSpec<double>(1e9, b), Error);
  CHECK_THROWS_AS(predict_loss(0.0, 1.0, 1.0), Error);
}

TEST_CASE("presets lie on the simplex and are monotone") {
  for (const PresetRecipe& p : preset_recipes()) {
    const MixtureRecipe<double> r = preset_recipe(p.name);
    CHECK(r.is_monotone());
    CHECK(r.weights().sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(preset_recipe("hq") == preset_recipe("HQ"));
  CHECK_THROWS_AS(preset_recipe("XQ"), Error);
}
