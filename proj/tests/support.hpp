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

// Test helpers: a seeded generator independent of the library's own RNG,
// and small comparison utilities.

#ifndef INFOLAW_TESTS_SUPPORT_HPP_
#define INFOLAW_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "infolaw/core.hpp"

namespace testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>()(engine_); }

  // Uniform point on the simplex by sorting uniforms and taking gaps.
  std::vector<double> simplex(int n) {
    std::vector<double> cuts{0.0, 1.0};
    for (int i = 0; i + 1 < n; ++i) cuts.push_back(uniform(0, 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> gaps;
    for (int i = 0; i < n; ++i) gaps.push_back(cuts[i + 1] - cuts[i]);
    return gaps;
  }

  infolaw::BucketArrayd recipe_weights() {
    const std::vector<double> w = simplex(infolaw::kNumBuckets);
    infolaw::BucketArrayd out;
    for (int d = 0; d < infolaw::kNumBuckets; ++d) out[d] = w[d];
    return out / out.sum();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace testing

#endif  // INFOLAW_TESTS_SUPPORT_HPP_
