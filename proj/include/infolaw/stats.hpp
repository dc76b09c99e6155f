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

#ifndef INFOLAW_STATS_HPP_
#define INFOLAW_STATS_HPP_

#include <span>
#include <vector>

namespace infolaw {

// Fractional ranks starting at 1; tied values share their average rank.
std::vector<double> fractional_ranks(std::span<const double> values);

// Pearson correlation. Throws kUndefinedCorrelation on zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double slope;
  double intercept;
  double r2;   // coefficient of determination, 1 when y is constant
  double rss;  // residual sum of squares
};
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace infolaw

#endif  // INFOLAW_STATS_HPP_
