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

// Exact Shapley attribution over groups of input features. A coalition's
// value is the interventional expectation: features outside the coalition
// take each background sample's values in turn and predictions are averaged.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lightbox::shap {

inline constexpr std::size_t kMaxGroups = 12;

/// Writes the model output for one input row into the second argument.
using Predictor = std::function<void(std::span<const double>, std::span<double>)>;

struct FeatureGrouping {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> groups;
  std::size_t feature_count = 0;

  std::size_t size() const { return groups.size(); }
  /// Throws unless the groups partition [0, feature_count).
  void check() const;

  /// Room-feature default: orientation one-hot, room dimensions (width and
  /// depth together), reflectance, shading, sill, window height, divisions.
  static FeatureGrouping room_default();
  static FeatureGrouping per_feature(std::size_t feature_count);
};

struct Explanation {
  std::size_t groups = 0;
  std::size_t outputs = 0;
  std::vector<double> base;        // per output: mean prediction over the background
  std::vector<double> phi;         // groups x outputs
  std::vector<double> prediction;  // per output, model(x)

  double value(std::size_t group, std::size_t output) const { return phi[group * outputs + output]; }
};

/// Background rows are given row-major with x.size() columns.
Explanation exact_shap(const Predictor& predict, std::size_t outputs, std::span<const double> x,
                       std::span<const double> background, const FeatureGrouping& grouping);

/// Shapley weight |S|! (M - |S| - 1)! / M! for coalition size s of M players.
double coalition_weight(std::size_t s, std::size_t m);

struct Summary {
  FeatureGrouping grouping;
  std::size_t outputs = 0;
  std::vector<Explanation> samples;
  std::vector<std::vector<double>> group_values;  // per sample, per group (see group_value)
  std::vector<double> mean_abs;                    // groups x outputs
  std::vector<std::vector<std::size_t>> ranking;   // per output, groups by descending mean |phi|
  std::vector<std::size_t> overall_ranking;        // by mean |phi| averaged across outputs

  double mean_abs_phi(std::size_t group, std::size_t output) const { return mean_abs[group * outputs + output]; }
};

/// Scalar shown against phi in scatter exports: the hot position for one-hot
/// groups, otherwise the mean of the group's feature values.
double group_value(std::span<const double> x, const std::vector<std::size_t>& group);

Summary summarize(const Predictor& predict, std::size_t outputs, std::span<const double> samples,
                  std::span<const double> background, const FeatureGrouping& grouping);

/// CSV: output,rank,group,mean_abs_phi
void write_summary(std::ostream& out, const Summary& summary, const std::vector<std::string>& output_names);
/// CSV: sample,group,feature_value,phi,output
void write_scatter(std::ostream& out, const Summary& summary, const std::vector<std::string>& output_names);

}  // namespace lightbox::shap
