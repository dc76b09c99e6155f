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

#include "infolaw/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "infolaw/budget.hpp"
#include "infolaw/parallel.hpp"
#include "infolaw/rng.hpp"
#include "infolaw/stats.hpp"

namespace infolaw {
namespace {

constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kRefineBatch = 64;
constexpr std::size_t kRefineStarts = 4;
constexpr double kRefineStepStart = 1.0;
constexpr double kRefineStepEnd = 0.002;

struct Score {
  double objective;
  double r2;
};

// Candidates whose objective lies within the tie band of the best objective
// seen so far are ranked by R^2; outside the band the lower objective wins.
class ScoreOrder {
 public:
  explicit ScoreOrder(double band) : band_(std::max(band, kTieTolerance)) {}

  void observe(const Score& score) { best_ = std::min(best_, score.objective); }

  bool better(const Score& candidate, const Score& incumbent) const {
    const bool tied_candidate = candidate.objective <= best_ + band_;
    const bool tied_incumbent = incumbent.objective <= best_ + band_;
    if (tied_candidate != tied_incumbent) return tied_candidate;
    if (!tied_candidate) return candidate.objective < incumbent.objective;
    if (candidate.r2 != incumbent.r2) return candidate.r2 > incumbent.r2;
    return candidate.objective < incumbent.objective;
  }

 private:
  double band_;
  double best_ = std::numeric_limits<double>::infinity();
};

constexpr int kMaxCurveIterations = 200;
constexpr double kCurveRelativeStop = 1e-10;

// Per-run quantities that do not depend on (theta, lambda).
struct PreparedRun {
  BucketArrayd unique;
  BucketArrayd repetition;
  double scale;
  std::size_t size_index;
};

struct Prepared {
  std::vector<PreparedRun> runs;
  std::vector<double> sizes;                      // distinct N, ascending
  std::vector<std::vector<std::size_t>> groups;   // run indices per group
  std::vector<std::vector<double>> group_losses;
  std::vector<double> log_losses;
};

std::size_t size_index_of(const std::vector<double>& sizes, double n) {
  const auto it = std::lower_bound(sizes.begin(), sizes.end(), n);
  if (it == sizes.end() || *it != n) {
    fail(ErrorCode::kInvalidInput, "no lambda supplied for a run's model size");
  }
  return static_cast<std::size_t>(it - sizes.begin());
}

Prepared prepare(std::span<const RunRecord> runs, Grouping grouping,
                 const Normalization<double>& norm) {
  if (runs.size() < 2) fail(ErrorCode::kInvalidInput, "need at least two runs");
  Prepared prep;
  for (const RunRecord& run : runs) {
    run.validate();
    prep.sizes.push_back(flops_per_token(run.arch));
  }
  std::sort(prep.sizes.begin(), prep.sizes.end());
  prep.sizes.erase(std::unique(prep.sizes.begin(), prep.sizes.end()), prep.sizes.end());

  if (grouping == Grouping::kGlobal) {
    prep.groups.resize(1);
  } else {
    prep.groups.resize(prep.sizes.size());
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunRecord& run = runs[i];
    const BucketStats<double> stats = layermix_stats(run.recipe, run.train_tokens, run.corpus);
    PreparedRun p{stats.unique, stats.repetition,
                  saturation_scale(run.train_tokens, norm),
                  size_index_of(prep.sizes, flops_per_token(run.arch))};
    prep.groups[grouping == Grouping::kGlobal ? 0 : p.size_index].push_back(i);
    prep.runs.push_back(p);
    prep.log_losses.push_back(std::log(run.loss));
  }
  for (const auto& group : prep.groups) {
    if (group.size() < 2) {
      fail(ErrorCode::kInvalidInput, "each group needs at least two runs");
    }
    std::vector<double> losses;
    for (std::size_t i : group) losses.push_back(runs[i].loss);
    prep.group_losses.push_back(std::move(losses));
  }
  return prep;
}

double prepared_info(const PreparedRun& run, const BucketArrayd& density, double lambda) {
  double info = 0;
  for (int d = 0; d < kNumBuckets; ++d) {
    if (!(run.unique[d] > 0)) continue;
    info -= density[d] * run.unique[d] * run.scale *
            std::expm1(-lambda * run.repetition[d] / run.scale);
  }
  return info;
}

std::vector<double> prepared_infos(const Prepared& prep, double theta,
                                   std::span<const double> lambdas) {
  const BucketArrayd density = quality_densities(theta);
  std::vector<double> infos(prep.runs.size());
  for (std::size_t i = 0; i < prep.runs.size(); ++i) {
    const PreparedRun& run = prep.runs[i];
    infos[i] = prepared_info(run, density, lambdas[run.size_index]);
  }
  return infos;
}

double grouped_spearman(const Prepared& prep, const std::vector<double>& infos) {
  double total = 0;
  std::vector<double> group_infos;
  for (std::size_t g = 0; g < prep.groups.size(); ++g) {
    group_infos.clear();
    for (std::size_t i : prep.groups[g]) group_infos.push_back(infos[i]);
    total += spearman(prep.group_losses[g], group_infos);
  }
  return total;
}

double loglog_r2(const Prepared& prep, const std::vector<double>& infos) {
  std::vector<double> log_infos(infos.size());
  for (std::size_t i = 0; i < infos.size(); ++i) {
    if (!(infos[i] > 0)) return 0;
    log_infos[i] = std::log(infos[i]);
  }
  try {
    const double r = pearson(log_infos, prep.log_losses);
    return r * r;
  } catch (const Error&) {
    return 0;
  }
}

void require_diversity(std::span<const RunRecord> runs) {
  std::vector<double> sizes;
  for (const RunRecord& run : runs) sizes.push_back(flops_per_token(run.arch));
  std::sort(sizes.begin(), sizes.end());
  const bool several_sizes = std::unique(sizes.begin(), sizes.end()) - sizes.begin() >= 2;
  bool several_recipes = false;
  for (const RunRecord& run : runs) {
    if (!(run.recipe.weights() == runs.front().recipe.weights()).all()) {
      several_recipes = true;
      break;
    }
  }
  if (!several_sizes || !several_recipes) {
    fail(ErrorCode::kInsufficientDiversity,
         "runs must span at least two model sizes and two recipes");
  }
}

void require_range(const Interval& range, const char* name) {
  if (!(range.lo > 0) || !(range.hi >= range.lo) || !std::isfinite(range.hi)) {
    fail(ErrorCode::kInvalidParameter,
         std::string(name) + " range must be a nonempty positive interval");
  }
}

struct Candidate {
  std::vector<double> point;  // theta followed by lambda per size
  Score score;
};

// Batches of log-space perturbations around the incumbent with a
// geometrically shrinking step; each batch is reduced by slot index so the
// outcome does not depend on the worker count. Move kinds cycle by slot: all
// coordinates, one coordinate, a common rescale of every lambda, and a tilt
// of lambda along ln N.
template <typename ScoreFn>
void refine(Candidate& incumbent, const ScoreFn& score, ScoreOrder& order,
            const std::vector<double>& sizes, const FitConfig& config,
            std::size_t budget, std::size_t start_index) {
  const std::size_t dims = incumbent.point.size();
  const std::size_t rounds = (budget + kRefineBatch - 1) / kRefineBatch;
  const double log_theta_lo = std::log(config.theta_range.lo);
  const double log_theta_hi = std::log(config.theta_range.hi);
  const double log_lambda_lo = std::log(config.lambda_range.lo);
  const double log_lambda_hi = std::log(config.lambda_range.hi);

  std::vector<double> tilt(dims - 1, 0.0);
  if (sizes.size() > 1) {
    const double lo = std::log(sizes.front());
    const double hi = std::log(sizes.back());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      tilt[k] = (std::log(sizes[k]) - 0.5 * (lo + hi)) / (hi - lo);
    }
  }

  std::vector<double> batch(kRefineBatch * dims);
  std::vector<Score> batch_scores(kRefineBatch);
  for (std::size_t round = 0; round < rounds; ++round) {
    const double progress = rounds > 1 ? double(round) / double(rounds - 1) : 1.0;
    const double step = kRefineStepStart * std::pow(kRefineStepEnd / kRefineStepStart, progress);
    parallel_for(kRefineBatch, config.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        const std::uint64_t stream = (start_index << 40) | (round * kRefineBatch + j);
        CounterRng rng(config.seed, RngDomain::kFitRefine, stream);
        const std::span<double> point(batch.data() + j * dims, dims);
        const std::size_t kind = j % 4;
        const std::size_t only = kind == 1 ? rng.next_u32() % dims : dims;
        const double shift = step * rng.normal();
        for (std::size_t s = 0; s < dims; ++s) {
          double log_value = std::log(incumbent.point[s]);
          if (kind == 0 || only == s) {
            log_value += step * rng.normal();
          } else if (kind == 2 && s > 0) {
            log_value += shift;
          } else if (kind == 3 && s > 0) {
            log_value += shift * tilt[s - 1];
          }
          log_value = s == 0 ? std::clamp(log_value, log_theta_lo, log_theta_hi)
                             : std::clamp(log_value, log_lambda_lo, log_lambda_hi);
          point[s] = std::exp(log_value);
        }
        batch_scores[j] = score(std::span<const double>(point));
      }
    });
    for (const Score& sc : batch_scores) order.observe(sc);
    std::size_t winner = kRefineBatch;
    for (std::size_t j = 0; j < kRefineBatch; ++j) {
      const Score& reference = winner == kRefineBatch ? incumbent.score : batch_scores[winner];
      if (order.better(batch_scores[j], reference)) winner = j;
    }
    if (winner != kRefineBatch) {
      std::copy_n(batch.begin() + winner * dims, dims, incumbent.point.begin());
      incumbent.score = batch_scores[winner];
    }
  }
}

LambdaCurveFit fit_exponential_curve(std::span<const LambdaPoint> points) {
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  double x_scale = 0;
  for (const LambdaPoint& p : points) x_scale = std::max(x_scale, p.flops_per_token);
  Eigen::ArrayXd x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = points[i].flops_per_token / x_scale;
    y[i] = points[i].lambda;
  }

  // Initializer from the extreme points.
  Eigen::Index lo_i = 0, hi_i = 0;
  x.minCoeff(&lo_i);
  x.maxCoeff(&hi_i);
  Eigen::Vector3d p;
  p[0] = y.maxCoeff();
  const double slope = (y[hi_i] - y[lo_i]) / (x[hi_i] - x[lo_i]);
  const double gap = p[0] - 0.5 * (y[hi_i] + y[lo_i]);
  p[1] = slope > 0 && gap > 0 ? slope / gap : 1.0;
  p[2] = 0;

  auto residuals = [&](const Eigen::Vector3d& q) -> Eigen::ArrayXd {
    return y + q[0] * (-q[1] * x + q[2]).exp() - q[0];
  };
  auto rss_of = [&](const Eigen::Vector3d& q) {
    const double rss = residuals(q).square().sum();
    return std::isfinite(rss) ? rss : std::numeric_limits<double>::infinity();
  };

  double rss = rss_of(p);
  double damping = 1e-3;
  int iterations = 0;
  for (; iterations < kMaxCurveIterations; ++iterations) {
    const Eigen::ArrayXd decay = (-p[1] * x + p[2]).exp();
    Eigen::MatrixXd jacobian(n, 3);
    jacobian.col(0) = (1.0 - decay).matrix();
    jacobian.col(1) = (p[0] * x * decay).matrix();
    jacobian.col(2) = (-p[0] * decay).matrix();
    const Eigen::VectorXd r = residuals(p).matrix();
    const Eigen::Matrix3d normal = jacobian.transpose() * jacobian;
    const Eigen::Vector3d gradient = jacobian.transpose() * r;
    const Eigen::Vector3d diag = normal.diagonal().cwiseMax(1e-12);

    bool accepted = false;
    double next_rss = rss;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      Eigen::Matrix3d damped = normal;
      damped.diagonal() += damping * diag;
      const Eigen::Vector3d step = damped.ldlt().solve(gradient);
      const Eigen::Vector3d candidate = p + step;
      next_rss = rss_of(candidate);
      if (next_rss < rss) {
        p = candidate;
        accepted = true;
        damping = std::max(damping * 0.1, 1e-12);
      } else {
        damping *= 10;
      }
    }
    if (!accepted) break;
    const double improvement = (rss - next_rss) / std::max(rss, 1e-300);
    rss = next_rss;
    if (improvement < kCurveRelativeStop) {
      ++iterations;
      break;
    }
  }

  LambdaCurveFit fit;
  fit.curve = {LambdaForm::kExponential, p[0], p[1] / x_scale, p[2]};
  fit.rss = rss;
  fit.iterations = iterations;
  return fit;
}

}  // namespace

void FitConfig::validate() const {
  if (n_samples < 1) fail(ErrorCode::kInvalidParameter, "n_samples must be at least 1");
  require_range(theta_range, "theta");
  require_range(lambda_range, "lambda");
  if (!(spearman_tie_band >= 0)) fail(ErrorCode::kInvalidParameter, "tie band must be nonnegative");
  if (normalization.mode == NormalizationMode::kPower && !std::isfinite(normalization.exponent)) {
    fail(ErrorCode::kInvalidParameter, "power normalization exponent must be finite");
  }
}

double run_info(const RunRecord& run, double theta, double lambda,
                const Normalization<double>& norm) {
  return total_info_at_rate(run.recipe, run.train_tokens, run.corpus, lambda, theta, norm);
}

double fit_objective(std::span<const RunRecord> runs, double theta,
                     const LambdaMap& lambdas, Grouping grouping,
                     const Normalization<double>& norm) {
  if (!(theta > 0)) fail(ErrorCode::kInvalidParameter, "theta must be positive");
  const Prepared prep = prepare(runs, grouping, norm);
  std::vector<double> rates;
  for (double n : prep.sizes) {
    const auto it = lambdas.find(n);
    if (it == lambdas.end()) {
      fail(ErrorCode::kInvalidInput, "no lambda supplied for a run's model size");
    }
    if (!(it->second >= 0)) fail(ErrorCode::kNonpositiveRate, "lambda must be nonnegative");
    rates.push_back(it->second);
  }
  return grouped_spearman(prep, prepared_infos(prep, theta, rates));
}

DensityLambdaFit fit_density_and_lambda(std::span<const RunRecord> runs,
                                        const FitConfig& config) {
  config.validate();
  if (runs.size() < 2) fail(ErrorCode::kInsufficientDiversity, "need at least two runs");
  require_diversity(runs);
  const Prepared prep = prepare(runs, config.grouping, config.normalization);
  for (const auto& losses : prep.group_losses) {
    if (std::adjacent_find(losses.begin(), losses.end(), std::not_equal_to<>()) ==
        losses.end()) {
      fail(ErrorCode::kUndefinedCorrelation, "losses are constant within a group");
    }
  }

  const std::size_t n_sizes = prep.sizes.size();
  const std::size_t dims = n_sizes + 1;  // theta followed by lambda per size
  auto score = [&](std::span<const double> point) -> Score {
    const std::vector<double> infos =
        prepared_infos(prep, point[0], point.subspan(1));
    try {
      return {grouped_spearman(prep, infos), loglog_r2(prep, infos)};
    } catch (const Error&) {
      return {std::numeric_limits<double>::infinity(), 0};
    }
  };

  // Global phase: independent log-uniform draws, one stream per candidate.
  const std::size_t n = config.n_samples;
  std::vector<double> points(n * dims);
  std::vector<Score> scores(n);
  parallel_for(n, config.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(config.seed, RngDomain::kFitSearch, i);
      const std::span<double> point(points.data() + i * dims, dims);
      point[0] = rng.log_uniform(config.theta_range.lo, config.theta_range.hi);
      for (std::size_t s = 1; s < dims; ++s) {
        point[s] = rng.log_uniform(config.lambda_range.lo, config.lambda_range.hi);
      }
      scores[i] = score(point);
    }
  });
  ScoreOrder order(config.spearman_tie_band);
  for (const Score& sc : scores) order.observe(sc);

  // One start per band of geometric-mean lambda: the best draw in the band.
  const double log_lambda_lo = std::log(config.lambda_range.lo);
  const double log_lambda_width =
      std::max(std::log(config.lambda_range.hi) - log_lambda_lo, 1e-300);
  std::vector<std::size_t> starts(kRefineStarts, n);
  for (std::size_t i = 0; i < n; ++i) {
    double mean_log = 0;
    for (std::size_t s = 1; s < dims; ++s) mean_log += std::log(points[i * dims + s]);
    mean_log /= static_cast<double>(n_sizes);
    const auto band = std::min<std::size_t>(
        kRefineStarts - 1,
        static_cast<std::size_t>(kRefineStarts * (mean_log - log_lambda_lo) / log_lambda_width));
    if (starts[band] == n || order.better(scores[i], scores[starts[band]])) starts[band] = i;
  }

  std::vector<double> best_point;
  Score best_score{std::numeric_limits<double>::infinity(), 0};
  const std::size_t budget = config.refine_samples;
  for (std::size_t k = 0; k < kRefineStarts; ++k) {
    if (starts[k] == n) continue;
    Candidate refined{{points.begin() + starts[k] * dims, points.begin() + (starts[k] + 1) * dims},
                      scores[starts[k]]};
    refine(refined, score, order, prep.sizes, config, budget, k);
    if (best_point.empty() || order.better(refined.score, best_score)) {
      best_point = std::move(refined.point);
      best_score = refined.score;
    }
  }
  if (!std::isfinite(best_score.objective)) {
    fail(ErrorCode::kUndefinedCorrelation, "no candidate produced a defined correlation");
  }

  DensityLambdaFit fit;
  fit.theta = best_point[0];
  for (std::size_t s = 0; s < n_sizes; ++s) fit.per_n_lambda[prep.sizes[s]] = best_point[s + 1];
  fit.objective = best_score.objective;
  fit.loglog_r2 = best_score.r2;
  return fit;
}

LambdaCurveFit fit_lambda_curve(std::span<const LambdaPoint> points, LambdaForm form) {
  const std::size_t needed = form == LambdaForm::kExponential ? 3 : 2;
  if (points.size() < needed) {
    fail(ErrorCode::kInvalidInput, "too few points for this lambda curve form");
  }
  std::vector<double> sizes;
  for (const LambdaPoint& p : points) {
    if (!(p.flops_per_token > 0)) fail(ErrorCode::kInvalidInput, "N must be positive");
    if (form == LambdaForm::kPower && !(p.lambda > 0)) {
      fail(ErrorCode::kInvalidInput, "power form requires positive lambda");
    }
    sizes.push_back(p.flops_per_token);
  }
  std::sort(sizes.begin(), sizes.end());
  if (std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end()) {
    fail(ErrorCode::kInvalidInput, "N values must be distinct");
  }

  if (form == LambdaForm::kExponential) return fit_exponential_curve(points);

  std::vector<double> xs, ys;
  for (const LambdaPoint& p : points) {
    xs.push_back(std::log(p.flops_per_token));
    ys.push_back(form == LambdaForm::kPower ? std::log(p.lambda) : p.lambda);
  }
  const LineFit line = fit_line(xs, ys);
  LambdaCurveFit fit;
  if (form == LambdaForm::kLogarithmic) {
    fit.curve = {LambdaForm::kLogarithmic, line.slope, line.intercept, 0.0};
  } else {
    fit.curve = {LambdaForm::kPower, std::exp(line.intercept), line.slope, 0.0};
  }
  fit.rss = 0;
  for (const LambdaPoint& p : points) {
    double predicted;
    if (form == LambdaForm::kLogarithmic) {
      predicted = fit.curve.a * std::log(p.flops_per_token) + fit.curve.b;
    } else {
      predicted = fit.curve.a * std::pow(p.flops_per_token, fit.curve.b);
    }
    fit.rss += (p.lambda - predicted) * (p.lambda - predicted);
  }
  return fit;
}

PowerLawFit fit_power_law(std::span<const InfoLossPoint> points) {
  if (points.size() < 2) fail(ErrorCode::kInvalidInput, "need at least two points");
  std::vector<double> xs, ys;
  for (const InfoLossPoint& p : points) {
    if (!(p.info > 0) || !(p.loss > 0)) {
      fail(ErrorCode::kInvalidInput, "info and loss must be positive");
    }
    xs.push_back(std::log(p.info));
    ys.push_back(std::log(p.loss));
  }
  const LineFit line = fit_line(xs, ys);
  return {std::exp(line.intercept), -line.slope, line.r2};
}

FitResult fit_full_pipeline(std::span<const RunRecord> runs, const FitConfig& config) {
  if (runs.size() < 2) fail(ErrorCode::kInsufficientDiversity, "need at least two runs");
  std::vector<RunRecord> expanded;
  if (config.use_checkpoints) {
    expanded = expand_checkpoints(runs);
    runs = expanded;
  }

  const DensityLambdaFit stage = fit_density_and_lambda(runs, config);

  std::vector<LambdaPoint> lambda_points;
  for (const auto& [n, lambda] : stage.per_n_lambda) lambda_points.push_back({n, lambda});
  const LambdaCurveFit curve = fit_lambda_curve(lambda_points, config.lambda_form);

  std::vector<InfoLossPoint> points;
  std::vector<double> infos;
  for (const RunRecord& run : runs) {
    const double lambda = curve.curve(flops_per_token(run.arch));
    const double info = run_info(run, stage.theta, lambda, config.normalization);
    infos.push_back(info);
    points.push_back({info, run.loss});
  }
  const PowerLawFit law = fit_power_law(points);
  if (!(law.r2 >= config.r2_floor) || !(law.beta > 0)) {
    fail(ErrorCode::kLawQuality,
         "law does not hold on this data: log-log R^2 = " + std::to_string(law.r2) +
             ", beta = " + std::to_string(law.beta));
  }

  FitResult result;
  result.params.theta = stage.theta;
  result.params.lambda = curve.curve;
  result.params.alpha = law.alpha;
  result.params.beta = law.beta;
  result.params.normalization = config.normalization;
  result.per_n_lambda = stage.per_n_lambda;
  result.objective_value = stage.objective;
  result.loglog_r2 = law.r2;
  result.lambda_rss = curve.rss;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const double predicted = predict_loss(infos[i], law.alpha, law.beta);
    result.diagnostics.push_back({runs[i].arch.label, flops_per_token(runs[i].arch),
                                  runs[i].train_tokens, infos[i], runs[i].loss, predicted,
                                  runs[i].loss - predicted});
  }
  return result;
}

std::vector<RunRecord> expand_checkpoints(std::span<const RunRecord> runs) {
  std::vector<RunRecord> out;
  for (const RunRecord& run : runs) {
    for (const Checkpoint& cp : run.checkpoints) {
      if (cp.tokens >= run.train_tokens) continue;
      RunRecord virtual_run = run;
      virtual_run.train_tokens = cp.tokens;
      virtual_run.loss = cp.loss;
      virtual_run.checkpoints.clear();
      out.push_back(std::move(virtual_run));
    }
    RunRecord final_run = run;
    final_run.checkpoints.clear();
    out.push_back(std::move(final_run));
  }
  return out;
}

LawComparison compare_laws(std::span<const RunRecord> runs, const FitConfig& config,
                           double fit_fraction) {
  if (!(fit_fraction > 0 && fit_fraction < 1)) {
    fail(ErrorCode::kInvalidParameter, "fit fraction must lie in (0, 1)");
  }
  std::vector<double> compute(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    compute[i] = flops_per_token(runs[i].arch) * runs[i].train_tokens;
  }
  std::vector<std::size_t> order(runs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return compute[a] < compute[b]; });
  const auto n_fit = static_cast<std::size_t>(
      std::ceil(fit_fraction * static_cast<double>(runs.size())));
  if (n_fit < 2 || n_fit >= runs.size()) {
    fail(ErrorCode::kInsufficientDiversity, "too few runs to split into fit and held-out sets");
  }
  std::vector<bool> in_fit(runs.size(), false);
  std::vector<RunRecord> fit_runs;
  std::vector<InfoLossPoint> compute_points;
  for (std::size_t j = 0; j < n_fit; ++j) {
    in_fit[order[j]] = true;
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (!in_fit[i]) continue;
    fit_runs.push_back(runs[i]);
    compute_points.push_back({compute[i], runs[i].loss});
  }

  LawComparison out;
  const PowerLawFit compute_law = fit_power_law(compute_points);
  out.p = compute_law.alpha;
  out.q = compute_law.beta;
  out.infolaw = fit_full_pipeline(fit_runs, config);
  const InfoLawParams<double>& params = out.infolaw.params;

  std::size_t held_out = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunRecord& run = runs[i];
    const double info = total_info(run.recipe, run.train_tokens, run.corpus,
                                   flops_per_token(run.arch), params);
    LawComparisonRow row{run.arch.label, compute[i], run.loss,
                         out.p * std::pow(compute[i], -out.q), predict_loss(info, params),
                         in_fit[i]};
    if (!row.in_fit) {
      const double e_compute = std::abs(row.compute_law - run.loss) / run.loss;
      const double e_info = std::abs(row.infolaw - run.loss) / run.loss;
      out.compute_law_mean_error += e_compute;
      out.infolaw_mean_error += e_info;
      out.compute_law_max_error = std::max(out.compute_law_max_error, e_compute);
      out.infolaw_max_error = std::max(out.infolaw_max_error, e_info);
      ++held_out;
    }
    out.rows.push_back(std::move(row));
  }
  out.compute_law_mean_error /= static_cast<double>(held_out);
  out.infolaw_mean_error /= static_cast<double>(held_out);
  return out;
}

}  // namespace infolaw
