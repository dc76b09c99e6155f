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

// Fitting the law from observed runs.
//
// Stage one searches (theta, lambda_N per model size) at random, scoring each
// candidate by the Spearman correlation between observed loss and computed
// information. Stage two smooths the per-size rates with a lambda(N) curve,
// and stage three regresses ln(loss) on ln(info) for (alpha, beta).

#ifndef INFOLAW_FITTING_HPP_
#define INFOLAW_FITTING_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "infolaw/core.hpp"

namespace infolaw {

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Grouping {
  kGlobal,    // one Spearman correlation over all runs
  kPerModel,  // sum of per-model-size correlations
};

struct FitConfig {
  std::size_t n_samples = 100000;
  // Local perturbation steps taken from each refinement start (the best
  // global draw per band of mean lambda); 0 disables.
  std::size_t refine_samples = 20000;
  // Objectives within this distance of the best one count as tied and are
  // ranked by log-log R^2.
  double spearman_tie_band = 0.01;
  Interval theta_range{0.05, 3.0};
  Interval lambda_range{0.01, 10.0};
  std::uint64_t seed = 0;
  Grouping grouping = Grouping::kGlobal;
  LambdaForm lambda_form = LambdaForm::kLogarithmic;
  Normalization<double> normalization;
  double r2_floor = 0.5;
  bool use_checkpoints = false;
  std::size_t workers = 1;  // 0 = hardware concurrency

  void validate() const;
};

// Fitted rate per model size, keyed by FLOPs per token.
using LambdaMap = std::map<double, double>;

struct LambdaPoint {
  double flops_per_token;
  double lambda;
};

struct InfoLossPoint {
  double info;
  double loss;
};

struct LambdaCurveFit {
  LambdaCurve<double> curve;
  double rss;  // residual sum of squares in lambda units
  int iterations = 0;
};

struct PowerLawFit {
  double alpha;
  double beta;
  double r2;
};

struct DensityLambdaFit {
  double theta;
  LambdaMap per_n_lambda;
  double objective;
  double loglog_r2;  // squared Pearson of (ln info, ln loss), the tie-break
};

struct RunDiagnostic {
  std::string label;
  double flops_per_token;
  double train_tokens;
  double info;
  double observed;
  double predicted;
  double residual;  // observed - predicted
  friend bool operator==(const RunDiagnostic&, const RunDiagnostic&) = default;
};

struct FitResult {
  InfoLawParams<double> params;
  LambdaMap per_n_lambda;
  double objective_value = 0;
  double loglog_r2 = 0;
  double lambda_rss = 0;
  std::vector<RunDiagnostic> diagnostics;
  friend bool operator==(const FitResult&, const FitResult&) = default;
};

// Information of a run for a given density decay and rate.
double run_info(const RunRecord& run, double theta, double lambda,
                const Normalization<double>& norm);

// Sum of Spearman correlations between loss and information; lower is
// better. lambdas must contain every run's FLOPs per token.
double fit_objective(std::span<const RunRecord> runs, double theta,
                     const LambdaMap& lambdas, Grouping grouping,
                     const Normalization<double>& norm);

// Random search followed by local refinement. Global candidate i draws
// theta, then one lambda per distinct N in ascending order, log-uniformly
// from the stream (seed, kFitSearch, i).
DensityLambdaFit fit_density_and_lambda(std::span<const RunRecord> runs,
                                        const FitConfig& config);

// Least-squares lambda(N) curve of the requested form. The exponential form
// is solved by Levenberg-Marquardt from a = max lambda, b from the slope
// between the extreme points, c = 0, for at most 200 iterations.
LambdaCurveFit fit_lambda_curve(std::span<const LambdaPoint> points, LambdaForm form);

// Regression of ln(loss) on ln(info): slope -beta, intercept ln(alpha).
PowerLawFit fit_power_law(std::span<const InfoLossPoint> points);

FitResult fit_full_pipeline(std::span<const RunRecord> runs, const FitConfig& config);

// Each checkpoint becomes a run with K' = tokens consumed and the same
// recipe and corpus; the final run is kept as is.
std::vector<RunRecord> expand_checkpoints(std::span<const RunRecord> runs);

struct LawComparisonRow {
  std::string label;
  double compute;  // N K
  double observed;
  double compute_law;  // p C^-q
  double infolaw;
  bool in_fit;
};

struct LawComparison {
  double p;
  double q;
  FitResult infolaw;
  std::vector<LawComparisonRow> rows;  // input order
  // Relative errors over the held-out runs.
  double compute_law_mean_error = 0;
  double compute_law_max_error = 0;
  double infolaw_mean_error = 0;
  double infolaw_max_error = 0;
};

// Fits loss = p C^-q and the information law on the cheapest fit_fraction
// of runs by compute (ties by input order) and evaluates both on the rest.
LawComparison compare_laws(std::span<const RunRecord> runs, const FitConfig& config,
                           double fit_fraction = 0.6);

}  // namespace infolaw

#endif  // INFOLAW_FITTING_HPP_
