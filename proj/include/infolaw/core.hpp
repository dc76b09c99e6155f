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

// Domain types and closed-form evaluation of the information law.
//
// Everything here is templated on the scalar type so the same expressions
// can be evaluated in double for production use and in wider types when
// checking numerics. All functions are pure.
//
// Units: token counts (K, S) are raw token counts, e.g. 106e9, never
// billions. N is non-embedding FLOPs per token (see budget.hpp). All
// logarithms are natural.

#ifndef INFOLAW_CORE_HPP_
#define INFOLAW_CORE_HPP_

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "infolaw/error.hpp"

namespace infolaw {

inline constexpr int kNumBuckets = 6;

template <typename Scalar>
using BucketArray = Eigen::Array<Scalar, kNumBuckets, 1>;

using BucketArrayd = BucketArray<double>;

enum class RecipeMode {
  kSimplex,   // nonnegative, sums to one
  kMonotone,  // additionally w_d >= w_{d+1}
};

inline constexpr double kSimplexTolerance = 1e-9;
inline constexpr double kOrderTolerance = 1e-12;

// Target token proportions per quality bucket; index 0 is the top bucket.
template <typename Scalar>
class MixtureRecipe {
 public:
  explicit MixtureRecipe(const BucketArray<Scalar>& weights,
                         RecipeMode mode = RecipeMode::kSimplex)
      : weights_(weights), mode_(mode) {
    validate();
  }

  // Rescales nonnegative weights onto the simplex first. Useful for tables
  // printed with rounded entries.
  static MixtureRecipe normalized(const BucketArray<Scalar>& weights,
                                  RecipeMode mode = RecipeMode::kSimplex) {
    if ((weights < Scalar(0)).any() || !(weights.sum() > Scalar(0))) {
      fail(ErrorCode::kInvalidInput,
           "recipe weights must be nonnegative with positive sum");
    }
    return MixtureRecipe(weights / weights.sum(), mode);
  }

  const BucketArray<Scalar>& weights() const { return weights_; }
  Scalar operator[](int d) const { return weights_[d]; }
  RecipeMode mode() const { return mode_; }

  bool is_monotone() const {
    for (int d = 0; d + 1 < kNumBuckets; ++d) {
      if (weights_[d] + Scalar(kOrderTolerance) < weights_[d + 1]) return false;
    }
    return true;
  }

  // Compares weights only; the mode is a validation constraint.
  friend bool operator==(const MixtureRecipe& lhs, const MixtureRecipe& rhs) {
    return (lhs.weights_ == rhs.weights_).all();
  }

 private:
  void validate() const {
    using std::abs;
    for (int d = 0; d < kNumBuckets; ++d) {
      const Scalar w = weights_[d];
      if (!(w >= Scalar(0)) || !(w <= Scalar(1))) {
        fail(ErrorCode::kInvalidInput,
             "recipe weight w_" + std::to_string(d) + " outside [0, 1]");
      }
    }
    if (!(abs(weights_.sum() - Scalar(1)) <= Scalar(kSimplexTolerance))) {
      fail(ErrorCode::kInvalidInput, "recipe weights must sum to 1");
    }
    if (mode_ == RecipeMode::kMonotone && !is_monotone()) {
      fail(ErrorCode::kInvalidInput,
           "monotone recipe requires w_d >= w_{d+1}");
    }
  }

  BucketArray<Scalar> weights_;
  RecipeMode mode_;
};

// Source corpus: total tokens S and the share B_d of each bucket.
template <typename Scalar>
struct CorpusSpec {
  Scalar source_tokens;
  BucketArray<Scalar> proportions;

  CorpusSpec(Scalar s, const BucketArray<Scalar>& b)
      : source_tokens(s), proportions(b) {
    using std::abs;
    if (!(source_tokens > Scalar(0))) {
      fail(ErrorCode::kInvalidInput, "source token count S must be positive");
    }
    for (int d = 0; d < kNumBuckets; ++d) {
      const bool last = d == kNumBuckets - 1;
      if (!(proportions[d] > Scalar(0)) &&
          !(last && proportions[d] == Scalar(0))) {
        fail(ErrorCode::kInvalidInput,
             "bucket proportion B_" + std::to_string(d) + " must be positive");
      }
    }
    if (!(abs(proportions.sum() - Scalar(1)) <= Scalar(kSimplexTolerance))) {
      fail(ErrorCode::kInvalidInput, "bucket proportions must sum to 1");
    }
  }

  BucketArray<Scalar> bucket_tokens() const {
    return proportions * source_tokens;
  }

  friend bool operator==(const CorpusSpec& lhs, const CorpusSpec& rhs) {
    return lhs.source_tokens == rhs.source_tokens &&
           (lhs.proportions == rhs.proportions).all();
  }
};

// Per-bucket packing statistics: planned tokens K_d, available S_d, unique
// M_d and average repetition R_d.
template <typename Scalar>
struct BucketStats {
  BucketArray<Scalar> planned;
  BucketArray<Scalar> source;
  BucketArray<Scalar> unique;
  BucketArray<Scalar> repetition;
};

struct ModelArch {
  int hidden_dim = 0;
  int mlp_dim = 0;
  int n_layers = 0;
  int n_heads = 0;
  int seq_len = 2048;
  std::string label;

  void validate() const {
    if (hidden_dim <= 0 || mlp_dim <= 0 || n_layers <= 0 || n_heads <= 0 ||
        seq_len < 0) {
      fail(ErrorCode::kInvalidInput,
           "model dimensions must be positive and seq_len nonnegative");
    }
  }

  friend bool operator==(const ModelArch&, const ModelArch&) = default;
};

enum class NormalizationMode { kLogarithmic, kConstant, kPower };

// How repeated exposures saturate relative to the training budget K.
template <typename Scalar>
struct Normalization {
  NormalizationMode mode = NormalizationMode::kLogarithmic;
  Scalar exponent = Scalar(0);  // only used by kPower

  static Normalization logarithmic() { return {}; }
  static Normalization constant() { return {NormalizationMode::kConstant, Scalar(0)}; }
  static Normalization power(Scalar p) { return {NormalizationMode::kPower, p}; }

  friend bool operator==(const Normalization&, const Normalization&) = default;
};

enum class LambdaForm { kLogarithmic, kExponential, kPower };

// lambda(N) as a function of FLOPs per token.
//   logarithmic: a ln N + b
//   exponential: a (1 - exp(-b N + c))
//   power:       a N^b
template <typename Scalar>
struct LambdaCurve {
  LambdaForm form = LambdaForm::kLogarithmic;
  Scalar a = Scalar(0);
  Scalar b = Scalar(0);
  Scalar c = Scalar(0);

  Scalar operator()(Scalar flops_per_token) const;

  friend bool operator==(const LambdaCurve&, const LambdaCurve&) = default;
};

// Complete state needed to predict loss for a configuration.
template <typename Scalar>
struct InfoLawParams {
  Scalar theta = Scalar(1);
  LambdaCurve<Scalar> lambda;
  Scalar alpha = Scalar(1);
  Scalar beta = Scalar(1);
  Normalization<Scalar> normalization;

  void validate() const {
    if (!(theta > Scalar(0))) fail(ErrorCode::kInvalidParameter, "theta must be positive");
    if (!(alpha > Scalar(0))) fail(ErrorCode::kInvalidParameter, "alpha must be positive");
    if (!(beta > Scalar(0))) fail(ErrorCode::kInvalidParameter, "beta must be positive");
  }

  friend bool operator==(const InfoLawParams&, const InfoLawParams&) = default;
};

struct Checkpoint {
  double tokens = 0;
  double loss = 0;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// One observed training run.
struct RunRecord {
  ModelArch arch;
  double train_tokens;
  CorpusSpec<double> corpus;
  MixtureRecipe<double> recipe;
  double loss;
  std::vector<Checkpoint> checkpoints;

  void validate() const {
    arch.validate();
    if (!(train_tokens > 0)) fail(ErrorCode::kInvalidInput, "train tokens K must be positive");
    if (!(loss > 0)) fail(ErrorCode::kInvalidInput, "loss must be positive");
    double previous = 0;
    for (const Checkpoint& cp : checkpoints) {
      if (!(cp.tokens > previous) || cp.tokens > train_tokens) {
        fail(ErrorCode::kInvalidInput,
             "checkpoint token counts must be strictly increasing and <= K");
      }
      if (!(cp.loss > 0)) fail(ErrorCode::kInvalidInput, "checkpoint loss must be positive");
      previous = cp.tokens;
    }
  }

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// ---------------------------------------------------------------------------
// Formulas

// Information per unique token of bucket d: exp(-theta d).
template <typename Scalar>
Scalar quality_density(int bucket, Scalar theta) {
  using std::exp;
  if (!(theta > Scalar(0))) fail(ErrorCode::kInvalidParameter, "theta must be positive");
  if (bucket < 0 || bucket >= kNumBuckets) {
    fail(ErrorCode::kInvalidInput, "bucket index out of range");
  }
  return exp(-theta * Scalar(bucket));
}

template <typename Scalar>
BucketArray<Scalar> quality_densities(Scalar theta) {
  BucketArray<Scalar> f;
  for (int d = 0; d < kNumBuckets; ++d) f[d] = quality_density(d, theta);
  return f;
}

// Logarithmic rate curve a ln N + b. Negative rates are rejected rather than
// clamped.
template <typename Scalar>
Scalar lambda_of_n(Scalar flops_per_token, Scalar a, Scalar b) {
  using std::log;
  if (!(flops_per_token > Scalar(0))) {
    fail(ErrorCode::kInvalidInput, "N must be positive");
  }
  const Scalar rate = a * log(flops_per_token) + b;
  if (!(rate >= Scalar(0))) {
    fail(ErrorCode::kNonpositiveRate, "lambda(N) is negative at this N");
  }
  return rate;
}

template <typename Scalar>
Scalar LambdaCurve<Scalar>::operator()(Scalar flops_per_token) const {
  using std::expm1;
  using std::pow;
  if (!(flops_per_token > Scalar(0))) {
    fail(ErrorCode::kInvalidInput, "N must be positive");
  }
  Scalar rate;
  switch (form) {
    case LambdaForm::kLogarithmic:
      return lambda_of_n(flops_per_token, a, b);
    case LambdaForm::kExponential:
      rate = -a * expm1(-b * flops_per_token + c);
      break;
    case LambdaForm::kPower:
      rate = a * pow(flops_per_token, b);
      break;
    default:
      fail(ErrorCode::kInvalidParameter, "unknown lambda form");
  }
  if (!(rate >= Scalar(0))) {
    fail(ErrorCode::kNonpositiveRate, "lambda(N) is negative at this N");
  }
  return rate;
}

// Scale at which repeated exposures saturate: ln K, 1, or K^p.
template <typename Scalar>
Scalar saturation_scale(Scalar train_tokens, const Normalization<Scalar>& norm) {
  using std::log;
  using std::pow;
  switch (norm.mode) {
    case NormalizationMode::kLogarithmic:
      if (!(train_tokens > Scalar(1))) {
        fail(ErrorCode::kInvalidParameter, "logarithmic normalization requires K > 1");
      }
      return log(train_tokens);
    case NormalizationMode::kConstant:
      return Scalar(1);
    case NormalizationMode::kPower:
      if (!(train_tokens > Scalar(0))) {
        fail(ErrorCode::kInvalidParameter, "power normalization requires K > 0");
      }
      return pow(train_tokens, norm.exponent);
  }
  fail(ErrorCode::kInvalidParameter, "unknown normalization mode");
}

// Information accumulated after T exposures, i.e. the integral over [0, T]
// of unit_info * lambda * exp(-lambda t / scale), with scale per
// saturation_scale. Bounded above by unit_info * scale.
template <typename Scalar>
Scalar cumulative_gain(Scalar exposures, Scalar lambda, Scalar train_tokens,
                       const Normalization<Scalar>& norm, Scalar unit_info) {
  using std::expm1;
  if (!(exposures >= Scalar(0))) fail(ErrorCode::kInvalidInput, "T must be nonnegative");
  if (!(lambda >= Scalar(0))) fail(ErrorCode::kNonpositiveRate, "lambda must be nonnegative");
  const Scalar scale = saturation_scale(train_tokens, norm);
  return -unit_info * scale * expm1(-lambda * exposures / scale);
}

// Expected packing statistics for drawing K tokens with recipe w from
// corpus (S, B). A bucket with K_d = 0 reports M_d = 0 and R_d = 1. A bucket
// with K_d > 0 but no source tokens reports M_d = 0 and R_d = inf.
template <typename Scalar>
BucketStats<Scalar> layermix_stats(const MixtureRecipe<Scalar>& recipe,
                                   Scalar train_tokens,
                                   const CorpusSpec<Scalar>& corpus) {
  if (!(train_tokens > Scalar(0))) fail(ErrorCode::kInvalidInput, "K must be positive");
  BucketStats<Scalar> stats;
  stats.planned = recipe.weights() * train_tokens;
  stats.source = corpus.bucket_tokens();
  stats.unique = stats.planned.min(stats.source);
  for (int d = 0; d < kNumBuckets; ++d) {
    if (!(stats.planned[d] > Scalar(0))) {
      stats.unique[d] = Scalar(0);
      stats.repetition[d] = Scalar(1);
    } else if (!(stats.unique[d] > Scalar(0))) {
      stats.repetition[d] = std::numeric_limits<Scalar>::infinity();
    } else if (stats.planned[d] <= stats.source[d]) {
      stats.repetition[d] = Scalar(1);
    } else {
      stats.repetition[d] = stats.planned[d] / stats.unique[d];
    }
  }
  return stats;
}

// Total information for a fixed learning rate lambda:
//   sum_d f_d(theta) * M_d * scale * (1 - exp(-lambda R_d / scale)).
// Buckets with M_d = 0 contribute nothing.
template <typename Scalar>
Scalar total_info_at_rate(const BucketStats<Scalar>& stats, Scalar train_tokens,
                          Scalar lambda, Scalar theta,
                          const Normalization<Scalar>& norm) {
  const BucketArray<Scalar> density = quality_densities(theta);
  Scalar info = Scalar(0);
  for (int d = 0; d < kNumBuckets; ++d) {
    if (!(stats.unique[d] > Scalar(0))) continue;
    info += density[d] * cumulative_gain(stats.repetition[d], lambda,
                                         train_tokens, norm, stats.unique[d]);
  }
  return info;
}

template <typename Scalar>
Scalar total_info_at_rate(const MixtureRecipe<Scalar>& recipe, Scalar train_tokens,
                          const CorpusSpec<Scalar>& corpus, Scalar lambda,
                          Scalar theta, const Normalization<Scalar>& norm) {
  return total_info_at_rate(layermix_stats(recipe, train_tokens, corpus),
                            train_tokens, lambda, theta, norm);
}

template <typename Scalar>
Scalar total_info(const MixtureRecipe<Scalar>& recipe, Scalar train_tokens,
                  const CorpusSpec<Scalar>& corpus, Scalar flops_per_token,
                  const InfoLawParams<Scalar>& params) {
  params.validate();
  const Scalar lambda = params.lambda(flops_per_token);
  return total_info_at_rate(recipe, train_tokens, corpus, lambda, params.theta,
                            params.normalization);
}

// Loss-information power law alpha * info^-beta.
template <typename Scalar>
Scalar predict_loss(Scalar info, Scalar alpha, Scalar beta) {
  using std::pow;
  if (!(info > Scalar(0))) fail(ErrorCode::kInvalidInput, "info must be positive");
  return alpha * pow(info, -beta);
}

template <typename Scalar>
Scalar predict_loss(Scalar info, const InfoLawParams<Scalar>& params) {
  return predict_loss(info, params.alpha, params.beta);
}

}  // namespace infolaw

#endif  // INFOLAW_CORE_HPP_
