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
#include "shap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <ostream>

#include "error.hpp"
#include "scene.hpp"
#include "textio.hpp"

namespace lightbox::shap {

namespace {

bool is_one_hot_block(const std::vector<std::size_t>& group) {
  return group.size() == 4 && group[0] == feature::kOrientNorth && group[3] == feature::kOrientWest;
}

std::vector<std::size_t> rank_descending(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

// Order-independent mean: sum the magnitudes in sorted order.
double sorted_mean(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

void FeatureGrouping::check() const {
  if (groups.empty()) fail(ErrorKind::InvalidArgument, "grouping has no groups");
  if (names.size() != groups.size()) fail(ErrorKind::InvalidArgument, "grouping names/groups size mismatch");
  std::vector<int> seen(feature_count, 0);
  for (const auto& g : groups) {
    if (g.empty()) fail(ErrorKind::InvalidArgument, "grouping contains an empty group");
    for (auto i : g) {
      if (i >= feature_count) fail(ErrorKind::InvalidArgument, "grouping index out of range");
      if (seen[i]++) fail(ErrorKind::InvalidArgument, "grouping groups overlap");
    }
  }
  for (int s : seen) {
    if (s == 0) fail(ErrorKind::InvalidArgument, "grouping does not cover every feature");
  }
}

FeatureGrouping FeatureGrouping::room_default() {
  FeatureGrouping g;
  g.feature_count = kFeatureCount;
  g.names = {"orientation", "room_dimensions", "reflectance", "shading", "sill_height", "window_height", "divisions"};
  g.groups = {{feature::kOrientNorth, feature::kOrientEast, feature::kOrientSouth, feature::kOrientWest},
              {feature::kWidth, feature::kDepth},
              {feature::kReflectance},
              {feature::kShading},
              {feature::kSill},
              {feature::kWindowHeight},
              {feature::kDivisions}};
  return g;
}

FeatureGrouping FeatureGrouping::per_feature(std::size_t n) {
  FeatureGrouping g;
  g.feature_count = n;
  for (std::size_t i = 0; i < n; ++i) {
    g.names.push_back(n == kFeatureCount ? std::string(feature_name(i)) : "f" + std::to_string(i));
    g.groups.push_back({i});
  }
  return g;
}

double coalition_weight(std::size_t s, std::size_t m) {
  // s! (m-s-1)! / m! = 1 / (m * C(m-1, s))
  double binom = 1.0;
  for (std::size_t i = 1; i <= s; ++i) binom = binom * static_cast<double>(m - 1 - s + i) / static_cast<double>(i);
  return 1.0 / (static_cast<double>(m) * binom);
}

Explanation exact_shap(const Predictor& predict, std::size_t outputs, std::span<const double> x,
                       std::span<const double> background, const FeatureGrouping& grouping) {
  grouping.check();
  const std::size_t m = grouping.size();
  const std::size_t d = x.size();
  if (d != grouping.feature_count) fail(ErrorKind::InvalidArgument, "sample width does not match grouping");
  if (m > kMaxGroups) {
    fail(ErrorKind::InvalidArgument, "exact Shapley enumeration supports at most " + std::to_string(kMaxGroups) +
                                         " groups; use a sampling explainer for more");
  }
  if (background.empty() || background.size() % d != 0) {
    fail(ErrorKind::InvalidArgument, "background must be a nonempty row-major matrix with the sample's width");
  }
  if (outputs == 0) fail(ErrorKind::InvalidArgument, "predictor must have at least one output");
  const std::size_t nb = background.size() / d;
  const std::size_t coalitions = std::size_t{1} << m;

  // value[S * outputs + k] = mean over background of f(x_S, b_notS)_k
  std::vector<double> value(coalitions * outputs, 0.0);
  std::vector<double> row(d), out(outputs), acc(outputs);
  for (std::size_t mask = 0; mask < coalitions; ++mask) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      std::copy_n(background.begin() + static_cast<std::ptrdiff_t>(b * d), d, row.begin());
      for (std::size_t g = 0; g < m; ++g) {
        if (mask & (std::size_t{1} << g)) {
          for (auto i : grouping.groups[g]) row[i] = x[i];
        }
      }
      predict(row, out);
      for (std::size_t k = 0; k < outputs; ++k) acc[k] += out[k];
    }
    for (std::size_t k = 0; k < outputs; ++k) value[mask * outputs + k] = acc[k] / static_cast<double>(nb);
  }

  Explanation e;
  e.groups = m;
  e.outputs = outputs;
  e.base.assign(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(outputs));
  e.phi.assign(m * outputs, 0.0);
  for (std::size_t g = 0; g < m; ++g) {
    const std::size_t bit = std::size_t{1} << g;
    for (std::size_t mask = 0; mask < coalitions; ++mask) {
      if (mask & bit) continue;
      const double w = coalition_weight(static_cast<std::size_t>(std::popcount(mask)), m);
      for (std::size_t k = 0; k < outputs; ++k) {
        e.phi[g * outputs + k] += w * (value[(mask | bit) * outputs + k] - value[mask * outputs + k]);
      }
    }
  }
  e.prediction.assign(outputs, 0.0);
  predict(x, e.prediction);
  return e;
}

double group_value(std::span<const double> x, const std::vector<std::size_t>& group) {
  if (is_one_hot_block(group)) {
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (x[group[j]] > 0.5) return static_cast<double>(j);
    }
    return 0.0;
  }
  double s = 0.0;
  for (auto i : group) s += x[i];
  return s / static_cast<double>(group.size());
}

Summary summarize(const Predictor& predict, std::size_t outputs, std::span<const double> samples,
                  std::span<const double> background, const FeatureGrouping& grouping) {
  grouping.check();
  const std::size_t d = grouping.feature_count;
  if (samples.empty() || samples.size() % d != 0) fail(ErrorKind::InvalidArgument, "samples must be nonempty");
  const std::size_t n = samples.size() / d;
  Summary s;
  s.grouping = grouping;
  s.outputs = outputs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = samples.subspan(i * d, d);
    s.samples.push_back(exact_shap(predict, outputs, x, background, grouping));
    std::vector<double> gv;
    for (const auto& g : grouping.groups) gv.push_back(group_value(x, g));
    s.group_values.push_back(std::move(gv));
  }
  const std::size_t m = grouping.size();
  s.mean_abs.assign(m * outputs, 0.0);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t k = 0; k < outputs; ++k) {
      std::vector<double> mags;
      mags.reserve(n);
      for (const auto& e : s.samples) mags.push_back(std::abs(e.value(g, k)));
      s.mean_abs[g * outputs + k] = sorted_mean(std::move(mags));
    }
  }
  std::vector<double> overall(m, 0.0);
  for (std::size_t k = 0; k < outputs; ++k) {
    std::vector<double> scores(m);
    for (std::size_t g = 0; g < m; ++g) {
      scores[g] = s.mean_abs_phi(g, k);
      overall[g] += scores[g] / static_cast<double>(outputs);
    }
    s.ranking.push_back(rank_descending(scores));
  }
  s.overall_ranking = rank_descending(overall);
  return s;
}

void write_summary(std::ostream& out, const Summary& s, const std::vector<std::string>& names) {
  out << "output,rank,group,mean_abs_phi\n";
  for (std::size_t k = 0; k < s.outputs; ++k) {
    for (std::size_t r = 0; r < s.ranking[k].size(); ++r) {
      const auto g = s.ranking[k][r];
      out << (k < names.size() ? names[k] : std::to_string(k)) << ',' << r + 1 << ',' << s.grouping.names[g] << ','
          << text::format_double(s.mean_abs_phi(g, k)) << '\n';
    }
  }
}

void write_scatter(std::ostream& out, const Summary& s, const std::vector<std::string>& names) {
  out << "sample,group,feature_value,phi,output\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    for (std::size_t g = 0; g < s.grouping.size(); ++g) {
      for (std::size_t k = 0; k < s.outputs; ++k) {
        out << i << ',' << s.grouping.names[g] << ',' << text::format_double(s.group_values[i][g]) << ','
            << text::format_double(s.samples[i].value(g, k)) << ',' << (k < names.size() ? names[k] : std::to_string(k))
            << '\n';
      }
    }
  }
}

}  // namespace lightbox::shap
