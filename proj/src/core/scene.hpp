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

// Shoebox room description, design-space enumeration, feature encoding and
// workplane grids.
//
// Room frame: x runs along the glazed wall (left to right as seen from inside
// looking out), y is the horizontal distance into the room measured from the
// glazing plane (y = 0), z is height above the floor.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace lightbox {

enum class Orientation : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };
enum class Shading : std::uint8_t { None = 0, HorizontalLouvre = 1 };
enum class Divisions : std::uint8_t { OneFullWidth = 0, ThreeEqual = 1 };

std::string_view to_string(Orientation o);
std::string_view to_string(Shading s);
std::string_view to_string(Divisions d);
Orientation parse_orientation(std::string_view token);
Shading parse_shading(std::string_view token);
Divisions parse_divisions(std::string_view token);

/// Azimuth (degrees clockwise from north) of the glazed wall's outward normal.
double facade_azimuth_deg(Orientation o);

struct RoomConfig {
  double width = 6.0;
  double depth = 7.0;
  double height = 3.5;
  Orientation orientation = Orientation::South;
  double reflectance = 0.4;
  Shading shading = Shading::None;
  double sill_height = 0.7;
  double window_height = 1.8;
  Divisions divisions = Divisions::OneFullWidth;
  double glazing_transmittance = 0.85;

  double head_height() const { return sill_height + window_height; }

  friend bool operator==(const RoomConfig&, const RoomConfig&) = default;
};

/// Throws Error(Validation) naming the first violated invariant.
void validate(const RoomConfig& config);

struct RoomDimensions {
  double width = 0.0;
  double depth = 0.0;
  friend bool operator==(const RoomDimensions&, const RoomDimensions&) = default;
};

/// One value list per design variable. Enumeration order is row-major over
/// the lists in declaration order (divisions varies fastest).
struct DesignSpace {
  std::vector<Orientation> orientations;
  std::vector<RoomDimensions> dimensions;
  std::vector<double> reflectances;
  std::vector<Shading> shadings;
  std::vector<double> sill_heights;
  std::vector<double> window_heights;
  std::vector<Divisions> divisions;
  double height = 3.5;
  double glazing_transmittance = 0.85;

  std::size_t cardinality() const;

  static DesignSpace table1();
  static DesignSpace table4();
  /// "table1" or "table4".
  static DesignSpace preset(std::string_view name);
  /// Declarative "name = v1, v2, ..." text, '#' comments allowed.
  static DesignSpace parse(std::string_view text);
  std::string to_text() const;
};

std::vector<RoomConfig> enumerate_design_space(const DesignSpace& space);

// --- feature encoding ------------------------------------------------------

inline constexpr std::size_t kFeatureCount = 11;
using FeatureVector = std::array<double, kFeatureCount>;

namespace feature {
inline constexpr std::size_t kOrientNorth = 0;
inline constexpr std::size_t kOrientEast = 1;
inline constexpr std::size_t kOrientSouth = 2;
inline constexpr std::size_t kOrientWest = 3;
inline constexpr std::size_t kWidth = 4;
inline constexpr std::size_t kDepth = 5;
inline constexpr std::size_t kReflectance = 6;
inline constexpr std::size_t kShading = 7;
inline constexpr std::size_t kSill = 8;
inline constexpr std::size_t kWindowHeight = 9;
inline constexpr std::size_t kDivisions = 10;
}  // namespace feature

std::string_view feature_name(std::size_t index);

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const Range&, const Range&) = default;
};

/// Min-max bounds for the continuous features, taken from a training space.
struct NormalizationBounds {
  Range width{3.0, 8.0};
  Range depth{4.0, 10.0};
  Range reflectance{0.2, 0.7};
  Range sill_height{0.5, 1.1};
  Range window_height{1.2, 2.4};

  static NormalizationBounds from_space(const DesignSpace& space);

  friend bool operator==(const NormalizationBounds&, const NormalizationBounds&) = default;
};

struct Encoding {
  FeatureVector features{};
  bool clamped = false;  // some value fell outside the bounds and was clamped
};

Encoding encode(const RoomConfig& config, const NormalizationBounds& bounds);

// --- windows ---------------------------------------------------------------

/// Glazing rectangle on the window wall, in wall coordinates (x along the
/// wall from the left corner, z above the floor).
struct WindowRect {
  double left = 0.0;
  double sill = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return left + width; }
  double top() const { return sill + height; }
  double area() const { return width * height; }
  /// Corners in the room frame (all at y = 0), counter-clockwise from
  /// bottom-left as seen from inside.
  std::array<Vec3, 4> corners() const;
};

std::vector<WindowRect> window_rects(const RoomConfig& config);
double glazed_area(std::span<const WindowRect> rects);

/// World (east, north, up) directions of the room-frame x and y axes.
struct RoomAxes {
  Vec3 x;
  Vec3 y;
};
RoomAxes room_axes(Orientation o);

// --- analysis grid ---------------------------------------------------------

struct GridParams {
  double spacing = 0.5;
  double workplane = 0.76;
  double wall_offset = 0.25;
  friend bool operator==(const GridParams&, const GridParams&) = default;
};

struct AnalysisGrid {
  std::vector<Vec3> points;  // row-major: y (distance from glazing) outer, x inner
  std::size_t columns = 0;   // along x
  std::size_t rows = 0;      // along y
  double spacing = 0.0;
  double cell_area = 0.0;
  double wall_offset = 0.0;
  double workplane = 0.0;

  std::size_t size() const { return points.size(); }
};

AnalysisGrid build_grid(const RoomConfig& config, const GridParams& params = {});

}  // namespace lightbox
