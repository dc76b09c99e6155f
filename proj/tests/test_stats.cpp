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

#include "infolaw/stats.hpp"
#include "spearman_oracle.hpp"
#include "support.hpp"

using namespace infolaw;

TEST_CASE("spearman matches the exhaustive oracle on small integer vectors") {
  long checked = 0, mismatched = 0;
  testing::for_each_small_pair(6, [&](const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto want = testing::brute_spearman(xs, ys);
    ++checked;
    try {
      const double got = spearman(xs, ys);
      if (!want || std::abs(got - *want) > 1e-12) ++mismatched;
    } catch (const Error& e) {
      if (want || e.code() != ErrorCode::kUndefinedCorrelation) ++mismatched;
    }
  });
  CHECK(checked > 500000);
  CHECK(mismatched == 0);
}

TEST_CASE("spearman is invariant under increasing transforms") {
  testing::Gen gen(21);
  for (int t = 0; t < 200; ++t) {
    const int n = gen.integer(3, 30);
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = gen.integer(-5, 5) + 0.5 * gen.integer(0, 1);
      ys[i] = gen.uniform(-2, 2);
    }
    double base;
    try {
      base = spearman(xs, ys);
    } catch (const Error&) {
      continue;
    }
    std::vector<double> ex(n), cube(n), affine(n);
    for (int i = 0; i < n; ++i) {
      ex[i] = std::exp(xs[i]);
      cube[i] = xs[i] * xs[i] * xs[i];
      affine[i] = 3 * xs[i] - 7;
    }
    CHECK(spearman(ex, ys) == doctest::Approx(base).epsilon(1e-12));
    CHECK(spearman(cube, ys) == doctest::Approx(base).epsilon(1e-12));
    CHECK(spearman(affine, ys) == doctest::Approx(base).epsilon(1e-12));
    CHECK(spearman(xs, ys) == doctest::Approx(spearman(ys, xs)).epsilon(1e-12));
  }
}

TEST_CASE("fractional ranks average ties") {
  const std::vector<double> v{3, 1, 3, 2};
  CHECK(fractional_ranks(v) == std::vector<double>{3.5, 1, 3.5, 2});
}

TEST_CASE("correlation and line fit edge cases") {
  const std::vector<double> xs{1, 2, 3, 4}, flat{2, 2, 2, 2};
  CHECK_THROWS_AS(pearson(xs, flat), Error);
  CHECK_THROWS_AS(spearman(std::vector<double>{1}, std::vector<double>{1}), Error);
  CHECK(pearson(xs, xs) == doctest::Approx(1.0));
  const std::vector<double> ys{3, 5, 7, 9};
  const LineFit line = fit_line(xs, ys);
  CHECK(line.slope == doctest::Approx(2.0));
  CHECK(line.intercept == doctest::Approx(1.0));
  CHECK(line.r2 == doctest::Approx(1.0));
  CHECK(fit_line(xs, flat).r2 == 1.0);
  CHECK_THROWS_AS(fit_line(flat, xs), Error);
}
