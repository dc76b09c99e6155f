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

// Built-in reference data: source bucket proportions, preset mixtures,
// the model family and the published fitted parameters.

#ifndef INFOLAW_PRESETS_HPP_
#define INFOLAW_PRESETS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "infolaw/core.hpp"

namespace infolaw {

// Token shares of the percentile buckets 0-5%, 5-20%, 20-40%, 40-60%,
// 60-80% and 80-100%.
BucketArrayd default_bucket_proportions();

struct PresetRecipe {
  std::string name;
  BucketArrayd weights;
};

// HQ, MHQ, MQ, MLQ, LQ. The published rows list w_5 = 0 but their first five
// entries sum to 0.98; the remainder is carried by w_5 so the rows lie on the
// simplex with w_0..w_4 unchanged.
const std::vector<PresetRecipe>& preset_recipes();

// Looks up a preset by name (case-insensitive). Throws kInvalidInput.
MixtureRecipe<double> preset_recipe(std::string_view name);

// The model family, 252M to 7.7B, all at sequence length 2048.
const std::vector<ModelArch>& model_archs();

// Looks up an architecture by label; "7B" is accepted for "7.7B".
const ModelArch& find_arch(std::string_view label);

// Published fitted parameters: theta = 0.922, a = 0.140, b = 0.018,
// alpha = 3.7373, beta = 0.0441, logarithmic normalization. Quoted, not
// re-derived.
InfoLawParams<double> paper_params();

}  // namespace infolaw

#endif  // INFOLAW_PRESETS_HPP_
