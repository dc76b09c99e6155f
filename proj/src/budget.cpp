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

#include "infolaw/budget.hpp"

#include <cfenv>
#include <cmath>

namespace infolaw {

double flops_per_token(const ModelArch& arch) {
  arch.validate();
  const double layers = arch.n_layers;
  const double hidden = arch.hidden_dim;
  const double seq = arch.seq_len;
  return 72.0 * layers * hidden * hidden + 12.0 * layers * hidden * seq;
}

OptimalAllocation chinchilla_optimal(double compute) {
  if (!(compute > 0)) fail(ErrorCode::kInvalidInput, "compute C must be positive");
  return {kNoptScale * std::pow(compute, kNoptExponent),
          kDoptScale * std::pow(compute, kDoptExponent)};
}

double overtrain_degree(double flops_per_token, double tokens) {
  return compute_budget(flops_per_token, tokens).overtrain;
}

ComputeBudget compute_budget(double flops_per_token, double tokens) {
  if (!(flops_per_token > 0)) fail(ErrorCode::kInvalidInput, "N must be positive");
  if (!(tokens > 0)) fail(ErrorCode::kInvalidInput, "D must be positive");
  const double compute = flops_per_token * tokens;
  const double ratio = chinchilla_optimal(compute).flops_per_token / flops_per_token;
  return {compute, flops_per_token, tokens, ratio * ratio};
}

double extrapolate_tokens(double overtrain, const ModelArch& target_arch) {
  if (!(overtrain > 0)) fail(ErrorCode::kInvalidInput, "overtrain degree m must be positive");
  const double root_m = std::sqrt(overtrain);
  const double target_nopt = flops_per_token(target_arch) * root_m;
  const double compute = std::pow(target_nopt / kNoptScale, 1.0 / kNoptExponent);
  return kDoptScale * std::pow(compute, kDoptExponent) * root_m;
}

OvertrainedAllocation overtrained_allocation(double compute, double overtrain) {
  if (!(overtrain > 0)) fail(ErrorCode::kInvalidInput, "overtrain degree m must be positive");
  const OptimalAllocation opt = chinchilla_optimal(compute);
  const double root_m = std::sqrt(overtrain);
  const double n = opt.flops_per_token / root_m;
  const double k = opt.tokens * root_m;
  return {n, k, n * k};
}

double learning_rate(double compute) {
  if (!(compute > 0)) fail(ErrorCode::kInvalidInput, "compute C must be positive");
  const double raw = kLrScale * std::pow(compute, kLrExponent);
  const int previous = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double rounded = std::nearbyint(raw * 1e8) / 1e8;
  std::fesetround(previous);
  return rounded;
}

}  // namespace infolaw
