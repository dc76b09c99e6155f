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

#include "infolaw/presets.hpp"

#include <algorithm>
#include <cctype>

namespace infolaw {
namespace {

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

BucketArrayd row(double w0, double w1, double w2, double w3, double w4, double w5) {
  BucketArrayd w;
  w << w0, w1, w2, w3, w4, w5;
  return w;
}

}  // namespace

BucketArrayd default_bucket_proportions() {
  return row(0.05, 0.15, 0.20, 0.20, 0.20, 0.20);
}

const std::vector<PresetRecipe>& preset_recipes() {
  static const std::vector<PresetRecipe> presets = {
      {"HQ", row(0.80, 0.10, 0.03, 0.03, 0.02, 0.02)},
      {"MHQ", row(0.66, 0.22, 0.05, 0.03, 0.02, 0.02)},
      {"MQ", row(0.48, 0.23, 0.13, 0.07, 0.07, 0.02)},
      {"MLQ", row(0.38, 0.21, 0.20, 0.11, 0.08, 0.02)},
      {"LQ", row(0.24, 0.20, 0.19, 0.18, 0.17, 0.02)},
  };
  return presets;
}

MixtureRecipe<double> preset_recipe(std::string_view name) {
  const std::string key = upper(name);
  for (const PresetRecipe& preset : preset_recipes()) {
    if (preset.name == key) return MixtureRecipe<double>(preset.weights, RecipeMode::kMonotone);
  }
  fail(ErrorCode::kInvalidInput, "unknown preset recipe '" + std::string(name) + "'");
}

const std::vector<ModelArch>& model_archs() {
  // hidden, mlp, layers, heads, seq_len, label
  static const std::vector<ModelArch> archs = {
      {1024, 2752, 20, 16, 2048, "252M"},  {1024, 2752, 24, 16, 2048, "302M"},
      {1280, 3392, 20, 20, 2048, "392M"},  {1280, 3392, 24, 20, 2048, "470M"},
      {1536, 4096, 20, 24, 2048, "566M"},  {1536, 4096, 24, 24, 2048, "680M"},
      {1792, 4800, 22, 28, 2048, "850M"},  {1920, 5120, 24, 30, 2048, "1B"},
      {2048, 5440, 24, 16, 2048, "1.2B"},  {2304, 6144, 24, 36, 2048, "1.5B"},
      {2304, 6144, 28, 36, 2048, "1.8B"},  {2560, 6848, 32, 40, 2048, "2.5B"},
      {4096, 14336, 32, 32, 2048, "7.7B"},
  };
  return archs;
}

const ModelArch& find_arch(std::string_view label) {
  std::string key = upper(label);
  if (key == "7B") key = "7.7B";
  for (const ModelArch& arch : model_archs()) {
    if (upper(arch.label) == key) return arch;
  }
  fail(ErrorCode::kInvalidInput, "unknown architecture '" + std::string(label) + "'");
}

InfoLawParams<double> paper_params() {
  InfoLawParams<double> params;
  params.theta = 0.922;
  params.lambda = {LambdaForm::kLogarithmic, 0.140, 0.018, 0.0};
  params.alpha = 3.7373;
  params.beta = 0.0441;
  params.normalization = Normalization<double>::logarithmic();
  return params;
}

}  // namespace infolaw
