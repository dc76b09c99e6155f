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

#include "infolaw/synth.hpp"

#include "infolaw/budget.hpp"
#include "infolaw/presets.hpp"
#include "infolaw/rng.hpp"

namespace infolaw {

std::vector<RunRecord> generate_runs(const SyntheticSpec& spec) {
  spec.params.validate();
  if (!(spec.source_ratio > 0)) fail(ErrorCode::kInvalidInput, "source ratio must be positive");
  if (!(spec.noise >= 0)) fail(ErrorCode::kInvalidInput, "noise must be nonnegative");
  std::vector<RunRecord> runs;
  std::uint64_t index = 0;
  for (const ModelArch& arch : spec.archs) {
    const double tokens = extrapolate_tokens(spec.overtrain, arch);
    const CorpusSpec<double> corpus(spec.source_ratio * tokens, spec.proportions);
    const double n = flops_per_token(arch);
    for (const MixtureRecipe<double>& recipe : spec.recipes) {
      const double info = total_info(recipe, tokens, corpus, n, spec.params);
      double loss = predict_loss(info, spec.params);
      if (spec.noise > 0) {
        CounterRng rng(spec.seed, RngDomain::kNoise, index);
        loss *= 1.0 + spec.noise * rng.normal();
      }
      runs.push_back({arch, tokens, corpus, recipe, loss, {}});
      ++index;
    }
  }
  return runs;
}

SyntheticSpec reference_fit_spec(const InfoLawParams<double>& params, double noise,
                                 std::uint64_t seed) {
  SyntheticSpec spec{params, {}, {}, 3.6, 1.0, default_bucket_proportions(), noise, seed};
  const std::vector<ModelArch>& archs = model_archs();
  spec.archs.assign(archs.begin(), archs.begin() + 9);
  for (const char* name : {"HQ", "MQ", "LQ"}) spec.recipes.push_back(preset_recipe(name));
  return spec;
}

}  // namespace infolaw
