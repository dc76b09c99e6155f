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

#include "infolaw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "infolaw/error.hpp"

namespace infolaw {
namespace {

void check_pair(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) fail(ErrorCode::kInvalidInput, "length mismatch");
  if (xs.size() < 2) fail(ErrorCode::kInvalidInput, "need at least two points");
}

Eigen::Map<const Eigen::ArrayXd> view(std::span<const double> values) {
  return {values.data(), static_cast<Eigen::Index>(values.size())};
}

}  // namespace

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    // positions start..end-1 hold ranks start+1..end
    const double average = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[order[k]] = average;
    start = end;
  }
  return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  const Eigen::ArrayXd x = view(xs) - view(xs).mean();
  const Eigen::ArrayXd y = view(ys) - view(ys).mean();
  const double sxx = x.square().sum();
  const double syy = y.square().sum();
  if (!(sxx > 0) || !(syy > 0)) {
    fail(ErrorCode::kUndefinedCorrelation, "correlation undefined for zero variance");
  }
  const double r = (x * y).sum() / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  const std::vector<double> rx = fractional_ranks(xs);
  const std::vector<double> ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  check_pair(xs, ys);
  const double mean_x = view(xs).mean();
  const double mean_y = view(ys).mean();
  const Eigen::ArrayXd x = view(xs) - mean_x;
  const Eigen::ArrayXd y = view(ys) - mean_y;
  const double sxx = x.square().sum();
  if (!(sxx > 0)) fail(ErrorCode::kInvalidInput, "regressor has zero variance");
  const double slope = (x * y).sum() / sxx;
  const double intercept = mean_y - slope * mean_x;
  const double rss = (y - slope * x).square().sum();
  const double tss = y.square().sum();
  const double r2 = tss > 0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;
  return {slope, intercept, r2, rss};
}

}  // namespace infolaw
