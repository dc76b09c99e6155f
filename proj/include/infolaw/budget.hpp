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

// Compute-budget arithmetic: FLOPs per token, Chinchilla-optimal
// allocation, overtrain degree and fixed-overtrain extrapolation.

#ifndef INFOLAW_BUDGET_HPP_
#define INFOLAW_BUDGET_HPP_

#include "infolaw/core.hpp"

namespace infolaw {

// Chinchilla-optimal allocation constants: N_opt = kNoptScale * C^kNoptExponent
// and D_opt = kDoptScale * C^kDoptExponent.
inline constexpr double kNoptScale = 0.06085;
inline constexpr double kNoptExponent = 0.5445;
inline constexpr double kDoptScale = 16.4326;
inline constexpr double kDoptExponent = 0.4555;

inline constexpr double kLrScale = 0.3118;
inline constexpr double kLrExponent = -0.1250;

struct OptimalAllocation {
  double flops_per_token;  // N_opt
  double tokens;           // D_opt
};

// C = N * D and m = (N_opt(C) / N)^2.
struct ComputeBudget {
  double compute;
  double flops_per_token;
  double tokens;
  double overtrain;
};

// Non-embedding FLOPs per token: 72 L d^2 + 12 L d l_seq.
double flops_per_token(const ModelArch& arch);

OptimalAllocation chinchilla_optimal(double compute);

double overtrain_degree(double flops_per_token, double tokens);

ComputeBudget compute_budget(double flops_per_token, double tokens);

// Train tokens for target_arch at the same overtrain degree m.
double extrapolate_tokens(double overtrain, const ModelArch& target_arch);

// Overtrained allocation of a fixed compute-optimal budget:
// K_m = sqrt(m) K_opt, N_m = N_opt / sqrt(m), so C_m = C_opt.
struct OvertrainedAllocation {
  double flops_per_token;
  double tokens;
  double compute;
};
OvertrainedAllocation overtrained_allocation(double compute, double overtrain);

// 0.3118 * C^-0.125 rounded half-to-even at 8 decimal places.
double learning_rate(double compute);

}  // namespace infolaw

#endif  // INFOLAW_BUDGET_HPP_
