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

// Analytic daylight stand-in used to label training data: deterministic
// pseudo-climate, direct-sun ray tests through the glazing (with optional
// exterior louvres), and a three-term illuminance model
// (direct + sky diffuse + uniform interreflection).

#include <cstdint>
#include <span>
#include <vector>

#include "scene.hpp"
#include "solar.hpp"

namespace lightbox {

struct DaylightSettings {
  double da_threshold_lux = 300.0;
  double udi_low_lux = 100.0;
  double udi_high_lux = 3000.0;
  double ase_hours = 250.0;
  double svd_lux = 3000.0;
  double svd_hours = 250.0;
  int occupied_start_hour = 8;  // clock hours, [start, end)
  int occupied_end_hour = 18;
  double louvre_depth = 0.15;
  double louvre_pitch = 0.15;
  double louvre_diffuse_transmission = 0.6;
  double clear_day_probability = 0.7;
};

struct SkyState {
  SunPosition sun;
  double direct_normal_lux = 0.0;
  double sky_horizontal_lux = 0.0;
};

// Clear-sky and overcast illuminance curves (lux) from solar altitude (deg).
double clear_sky_direct_normal_lux(double altitude_deg);
double clear_sky_diffuse_horizontal_lux(double altitude_deg);
double overcast_horizontal_lux(double altitude_deg);

/// Unit vector toward the sun in world (east, north, up).
Vec3 sun_direction_world(const SunPosition& sun);
/// Unit vector toward the sun in the room frame of @p orientation.
Vec3 sun_direction_room(const SunPosition& sun, Orientation orientation);

/// True when a ray leaving the glazing at height @p z_glass in direction
/// (@p outward, @p up) crosses an exterior slat: slats sit at sill + k*pitch
/// and at the window head, each @p depth deep.
bool louvre_blocks(double z_glass, double outward, double up, const WindowRect& rect, const DaylightSettings& s);

/// Ray from @p point toward the sun passes through glazing and, if shaded,
/// between the slats.
bool direct_sun_hits(const Vec3& point, const RoomConfig& config, const SunPosition& sun,
                     const DaylightSettings& settings = {});

struct IlluminanceTerms {
  double direct = 0.0;
  double diffuse = 0.0;
  double interreflected = 0.0;
  double total() const { return direct + diffuse + interreflected; }
};

IlluminanceTerms proxy_illuminance_terms(const Vec3& point, const RoomConfig& config, const SkyState& sky,
                                         const DaylightSettings& settings = {});
double proxy_illuminance(const Vec3& point, const RoomConfig& config, const SkyState& sky,
                         const DaylightSettings& settings = {});

/// Occupied hours of a reference year with seeded cloudiness.
struct PseudoClimate {
  Location location;
  std::uint64_t seed = 0;
  std::vector<SkyState> hours;

  static PseudoClimate generate(const Location& location, std::uint64_t seed, const DaylightSettings& settings = {});
};

/// Per-point hourly illuminance and direct-sun flags (point-major).
struct AnnualPointSeries {
  std::size_t points = 0;
  std::size_t hours = 0;
  std::vector<double> lux;
  std::vector<std::uint8_t> direct_sun;

  double illuminance(std::size_t point, std::size_t hour) const { return lux[point * hours + hour]; }
  bool direct(std::size_t point, std::size_t hour) const { return direct_sun[point * hours + hour] != 0; }
};

struct DaylightMetrics {
  double udi = 0.0;
  double m_da = 0.0;
  double s_da = 0.0;
  double ase = 0.0;
  double s_vd = 0.0;
};

AnnualPointSeries annual_point_series(const RoomConfig& config, const AnalysisGrid& grid,
                                      const PseudoClimate& climate, const DaylightSettings& settings = {});

DaylightMetrics metrics_from_series(const AnnualPointSeries& series, const DaylightSettings& settings = {});

/// Same result as metrics_from_series(annual_point_series(...)) without
/// materialising the series.
DaylightMetrics annual_metrics(const RoomConfig& config, const AnalysisGrid& grid, const PseudoClimate& climate,
                               const DaylightSettings& settings = {});

}  // namespace lightbox
