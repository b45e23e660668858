/*
 * Copyright (c) 2026, The Lightbox Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Trained surrogate: network plus the encoding state it was trained with,
// persistence, and evaluation reports.

#include <string>
#include <string_view>
#include <vector>

#include "ann.hpp"
#include "dataset.hpp"
#include "metrics.hpp"
#include "scene.hpp"

namespace lightbox {

struct SurrogateModel {
  ann::Network net;
  NormalizationBounds bounds;
  GridParams grid;
  ann::TrainConfig train;
  std::vector<double> loss_history;

  MetricVector predict(const RoomConfig& config, bool* clamped = nullptr) const;
  MetricVector predict_features(std::span<const double> features) const;
};

std::string format_model(const SurrogateModel& model);
SurrogateModel parse_model(std::string_view text);
void save_model(const SurrogateModel& model, const std::string& path);
SurrogateModel load_model(const std::string& path);
std::string model_digest(const SurrogateModel& model);

/// Encoded inputs and metric targets; throws if the dataset is unlabeled.
ann::TrainingSet training_set(const Dataset& dataset, const NormalizationBounds& bounds);

struct EvalReport {
  std::size_t n = 0;
  MetricVector mae{};
  MetricVector mse{};
  MetricVector max_abs_residual{};
  std::vector<double> residuals;  // n x 8, prediction - target

  double mean_mae() const;
  double residual(std::size_t sample, std::size_t metric) const { return residuals[sample * kMetricCount + metric]; }
};

EvalReport evaluate_predictions(std::span<const double> predicted, std::span<const double> target);
EvalReport evaluate(const SurrogateModel& model, const Dataset& dataset);

/// Eight rows in MetricVector order with reference columns.
std::string format_report(const EvalReport& report);
/// Quantiles and a coarse histogram of |residual| for one metric.
std::string format_residual_distribution(const EvalReport& report, std::size_t metric);

struct FitResult {
  SurrogateModel model;
  ann::Split split;
  EvalReport holdout;
};

/// Seeded split by config.train_fraction, training on the train side and
/// evaluating the held-out side. Bounds come from the dataset metadata.
FitResult fit(const Dataset& dataset, const ann::TrainConfig& config);

}  // namespace lightbox
