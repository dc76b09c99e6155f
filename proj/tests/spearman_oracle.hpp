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

// Exhaustive reference for Spearman correlation: every rank is counted from
// scratch (strictly smaller values plus half the other ties), no sorting.

#ifndef INFOLAW_TESTS_SPEARMAN_ORACLE_HPP_
#define INFOLAW_TESTS_SPEARMAN_ORACLE_HPP_

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace testing {

inline std::vector<double> counted_ranks(const std::vector<double>& v) {
  std::vector<double> ranks;
  for (double a : v) {
    int below = 0, equal = 0;
    for (double b : v) {
      below += b < a;
      equal += b == a;
    }
    ranks.push_back(below + (equal + 1) / 2.0);
  }
  return ranks;
}

// nullopt when either side has no variance.
inline std::optional<double> brute_spearman(const std::vector<double>& xs,
                                            const std::vector<double>& ys) {
  auto constant = [](const std::vector<double>& v) {
    for (double a : v) {
      if (a != v.front()) return false;
    }
    return true;
  };
  if (constant(xs) || constant(ys)) return std::nullopt;
  const std::vector<double> rx = counted_ranks(xs), ry = counted_ranks(ys);
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += rx[i] / n;
    my += ry[i] / n;
  }
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

// Calls visit(xs, ys) for every pair of vectors of the same length in
// [2, max_len] with entries in {1, 2, 3}.
inline void for_each_small_pair(
    int max_len, const std::function<void(const std::vector<double>&, const std::vector<double>&)>& visit) {
  for (int n = 2; n <= max_len; ++n) {
    int count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    auto decode = [n](int code) {
      std::vector<double> v(n);
      for (int i = 0; i < n; ++i, code /= 3) v[i] = 1 + code % 3;
      return v;
    };
    for (int a = 0; a < count; ++a) {
      const std::vector<double> xs = decode(a);
      for (int b = 0; b < count; ++b) visit(xs, decode(b));
    }
  }
}

}  // namespace testing

#endif  // INFOLAW_TESTS_SPEARMAN_ORACLE_HPP_
