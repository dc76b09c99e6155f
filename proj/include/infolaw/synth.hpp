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

// Synthetic run records generated from known parameters.

#ifndef INFOLAW_SYNTH_HPP_
#define INFOLAW_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "infolaw/core.hpp"

namespace infolaw {

struct SyntheticSpec {
  InfoLawParams<double> params;
  std::vector<ModelArch> archs;
  std::vector<MixtureRecipe<double>> recipes;
  double overtrain = 3.6;        // K per arch from extrapolate_tokens
  double source_ratio = 1.0;     // S = source_ratio * K
  BucketArrayd proportions;      // B
  double noise = 0.0;            // relative sd of multiplicative loss noise
  std::uint64_t seed = 0;
};

// One run per (arch, recipe), arch-major. Loss is the law's prediction times
// (1 + noise * z) with z standard normal drawn from the run's own stream.
std::vector<RunRecord> generate_runs(const SyntheticSpec& spec);

// The fitting set used throughout the tests: the nine smallest architectures
// (252M to 1.2B) with HQ, MQ and LQ at m = 3.6, S = K.
SyntheticSpec reference_fit_spec(const InfoLawParams<double>& params, double noise,
                                 std::uint64_t seed);

}  // namespace infolaw

#endif  // INFOLAW_SYNTH_HPP_
