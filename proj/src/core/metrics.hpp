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

#include <array>
#include <cstddef>
#include <string_view>

namespace lightbox {

inline constexpr std::size_t kMetricCount = 8;

/// Component order of every metric vector, file column and report row.
enum class Metric : std::size_t {
  Udi = 0,
  MeanDa = 1,
  SpatialDa = 2,
  Ase = 3,
  Svd = 4,
  ViewRange = 5,
  ViewDepth = 6,
  ViewFactor = 7,
};

using MetricVector = std::array<double, kMetricCount>;

inline constexpr std::size_t index(Metric m) { return static_cast<std::size_t>(m); }

inline constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "udi", "m_da", "s_da", "ase", "s_vd", "view_range", "view_depth", "view_factor",
};

inline std::string_view metric_name(std::size_t i) { return i < kMetricCount ? kMetricNames[i] : "?"; }

/// Published reference errors (MAE, MSE) per metric, for comparison columns only.
struct ReferenceError {
  double mae;
  double mse;
};
inline constexpr std::array<ReferenceError, kMetricCount> kReferenceErrors = {{
    {0.022, 0.0008},  // udi
    {0.019, 0.0006},  // m_da
    {0.042, 0.003},   // s_da
    {0.031, 0.003},   // ase
    {0.047, 0.003},   // s_vd
    {0.06, 0.007},    // view_range
    {0.018, 0.0017},  // view_depth
    {0.03, 0.0015},   // view_factor
}};

inline bool in_unit_interval(const MetricVector& m) {
  for (double v : m) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  return true;
}

}  // namespace lightbox
