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

// Quality-view metrics over the analysis grid: view factor (glazing solid
// angle rating), view depth (distance from glazing vs head height) and view
// range (horizontal angular spread of visible glazing).

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "scene.hpp"

namespace lightbox {

struct ViewSettings {
  double eye_height = 1.2;  // seated occupant
  // Solid-angle bin edges (sr) between ratings 1|2|3|4|5.
  std::array<double, 4> rating_thresholds{0.05, 0.2, 0.5, 1.0};
  int compliant_rating = 3;
  double depth_multiple = 3.0;  // compliant within depth_multiple * head height
  double range_threshold_deg = 90.0;
  double area_threshold = 0.75;
};

/// Exact solid angle (sr) of the glazing rectangles seen from @p eye
/// (room frame). Throws when the eye lies in or behind the glazing plane.
double glazing_solid_angle(const Vec3& eye, std::span<const WindowRect> rects);

/// Solid angle of the corner-aligned rectangle [0,a] x [0,b] at distance d
/// on the normal through the corner. Odd in a and b.
double corner_rect_solid_angle(double a, double b, double d);

int view_factor_rating(double solid_angle, const ViewSettings& settings = {});

/// Horizontal angle (radians) between the two extreme sight-line bearings
/// to glazing from plan position (x, y); 0 when no glazing has width.
double view_spread(double x, double y, std::span<const WindowRect> rects);

struct PointView {
  double x = 0.0;
  double y = 0.0;
  double solid_angle = 0.0;
  int rating = 1;
  bool factor_compliant = false;
  bool depth_compliant = false;
  bool range_compliant = false;
};

struct ViewResult {
  std::vector<PointView> points;
  double view_factor_fraction = 0.0;
  double view_depth_fraction = 0.0;
  double view_range_fraction = 0.0;
  bool quality_views_pass = false;
};

/// At least two of the three fractions reach @p threshold.
bool quality_views_pass(double factor, double depth, double range, double threshold = 0.75);

ViewResult evaluate_views(const RoomConfig& config, const AnalysisGrid& grid, const ViewSettings& settings = {});

double view_factor_fraction(const RoomConfig& config, const AnalysisGrid& grid, const ViewSettings& settings = {});
double view_depth_fraction(const RoomConfig& config, const AnalysisGrid& grid, const ViewSettings& settings = {});
double view_range_fraction(const RoomConfig& config, const AnalysisGrid& grid, const ViewSettings& settings = {});

/// CSV: x,y,solid_angle,rating,factor_compliant,depth_compliant,range_compliant
void write_point_table(std::ostream& out, const ViewResult& result);

}  // namespace lightbox
