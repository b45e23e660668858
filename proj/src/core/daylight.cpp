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
#include "daylight.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "views.hpp"

namespace lightbox {

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Per-hour sun data expressed in one room frame.
struct HourInRoom {
  double sx = 0.0;
  double outward = 0.0;  // component toward the glazing (out of the room)
  double up = 0.0;
  double direct_horizontal = 0.0;  // E_dn * sin(alt), before glazing
  double sky = 0.0;
};

std::vector<HourInRoom> hours_in_room(const PseudoClimate& climate, Orientation o) {
  std::vector<HourInRoom> out;
  out.reserve(climate.hours.size());
  for (const auto& h : climate.hours) {
    const Vec3 s = sun_direction_room(h.sun, o);
    HourInRoom r;
    r.sx = s.x;
    r.outward = -s.y;
    r.up = s.z;
    r.direct_horizontal = h.sun.altitude > 0.0 ? h.direct_normal_lux * s.z : 0.0;
    r.sky = h.sky_horizontal_lux;
    out.push_back(r);
  }
  return out;
}

class RoomEvaluator {
 public:
  RoomEvaluator(const RoomConfig& c, const DaylightSettings& s) : config_(c), settings_(s) {
    for (const auto& r : window_rects(c)) {
      if (r.width > 0.0 && r.height > 0.0) rects_.push_back(r);
    }
    const double tau = c.glazing_transmittance;
    shade_ = c.shading == Shading::HorizontalLouvre ? s.louvre_diffuse_transmission : 1.0;
    const double surfaces = 2.0 * (c.width * c.depth + c.width * c.height + c.depth * c.height);
    const double rho = c.reflectance;
    // Vertical sky illuminance on the facade taken as half the horizontal value.
    interreflected_coef_ = 0.5 * tau * shade_ * glazed_area(rects_) * rho / (surfaces * (1.0 - rho));
  }

  double diffuse_coef(const Vec3& p) const {
    if (rects_.empty()) return 0.0;
    return config_.glazing_transmittance * shade_ * glazing_solid_angle(p, rects_) / (2.0 * kPi);
  }

  double interreflected_coef() const { return interreflected_coef_; }

  bool hits(const Vec3& p, double sx, double outward, double up) const {
    if (!(outward > 0.0) || !(up > 0.0)) return false;
    const double t = p.y / outward;
    const double x = p.x + t * sx;
    const double z = p.z + t * up;
    for (const auto& r : rects_) {
      if (x < r.left || x > r.right() || z < r.sill || z > r.top()) continue;
      if (config_.shading == Shading::HorizontalLouvre) return !louvre_blocks(z, outward, up, r, settings_);
      return true;
    }
    return false;
  }

  double transmittance() const { return config_.glazing_transmittance; }

 private:
  RoomConfig config_;
  DaylightSettings settings_;
  std::vector<WindowRect> rects_;
  double shade_ = 1.0;
  double interreflected_coef_ = 0.0;
};

struct PointTally {
  std::size_t da = 0;
  std::size_t udi = 0;
  std::size_t sun = 0;
  std::size_t glare = 0;

  void add(double lux, bool direct, const DaylightSettings& s) {
    da += lux >= s.da_threshold_lux;
    udi += lux >= s.udi_low_lux && lux <= s.udi_high_lux;
    sun += direct;
    glare += direct && lux > s.svd_lux;
  }
};

DaylightMetrics aggregate(const std::vector<PointTally>& tallies, std::size_t hours, const DaylightSettings& s) {
  DaylightMetrics m;
  if (tallies.empty() || hours == 0) return m;
  const double h = static_cast<double>(hours);
  std::size_t sda = 0, ase = 0, svd = 0;
  for (const auto& t : tallies) {
    const double da = static_cast<double>(t.da) / h;
    m.m_da += da;
    m.udi += static_cast<double>(t.udi) / h;
    sda += da >= 0.5;
    ase += static_cast<double>(t.sun) >= s.ase_hours;
    svd += static_cast<double>(t.glare) >= s.svd_hours;
  }
  const double n = static_cast<double>(tallies.size());
  m.m_da /= n;
  m.udi /= n;
  m.s_da = static_cast<double>(sda) / n;
  m.ase = static_cast<double>(ase) / n;
  m.s_vd = static_cast<double>(svd) / n;
  return m;
}

template <typename Sink>
void simulate(const RoomConfig& c, const AnalysisGrid& grid, const PseudoClimate& climate,
              const DaylightSettings& s, Sink&& sink) {
  const RoomEvaluator room(c, s);
  const auto hours = hours_in_room(climate, c.orientation);
  const double tau = room.transmittance();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3& p = grid.points[i];
    const double sky_coef = room.diffuse_coef(p) + room.interreflected_coef();
    for (std::size_t k = 0; k < hours.size(); ++k) {
      const auto& h = hours[k];
      double lux = h.sky * sky_coef;
      bool direct = false;
      if (h.direct_horizontal > 0.0 && room.hits(p, h.sx, h.outward, h.up)) {
        direct = true;
        lux += h.direct_horizontal * tau;
      }
      sink(i, k, lux, direct);
    }
  }
}

}  // namespace

double clear_sky_direct_normal_lux(double alt) {
  if (alt <= 0.0) return 0.0;
  return 127500.0 * std::exp(-0.21 / std::sin(deg2rad(alt)));
}

double clear_sky_diffuse_horizontal_lux(double alt) {
  if (alt <= 0.0) return 0.0;
  return 800.0 + 15500.0 * std::sqrt(std::sin(deg2rad(alt)));
}

double overcast_horizontal_lux(double alt) {
  if (alt <= 0.0) return 0.0;
  return 300.0 + 21000.0 * std::sin(deg2rad(alt));
}

Vec3 sun_direction_world(const SunPosition& sun) {
  const double alt = deg2rad(sun.altitude);
  const double az = deg2rad(sun.azimuth);
  return {std::cos(alt) * std::sin(az), std::cos(alt) * std::cos(az), std::sin(alt)};
}

Vec3 sun_direction_room(const SunPosition& sun, Orientation o) {
  const Vec3 w = sun_direction_world(sun);
  const RoomAxes axes = room_axes(o);
  return {dot(w, axes.x), dot(w, axes.y), w.z};
}

bool louvre_blocks(double z_glass, double outward, double up, const WindowRect& r, const DaylightSettings& s) {
  if (!(outward > 0.0)) return false;
  const double rise = s.louvre_depth * up / outward;
  // First slat strictly above the exit point; the head slat caps the stack.
  const double k = std::floor((z_glass - r.sill) / s.louvre_pitch) + 1.0;
  double level = r.sill + k * s.louvre_pitch;
  if (level > r.top()) level = r.top();
  if (!(level > z_glass)) return false;
  return level <= z_glass + rise;
}

bool direct_sun_hits(const Vec3& point, const RoomConfig& config, const SunPosition& sun,
                     const DaylightSettings& settings) {
  if (sun.altitude <= 0.0) return false;
  const RoomEvaluator room(config, settings);
  const Vec3 s = sun_direction_room(sun, config.orientation);
  return room.hits(point, s.x, -s.y, s.z);
}

IlluminanceTerms proxy_illuminance_terms(const Vec3& point, const RoomConfig& config, const SkyState& sky,
                                         const DaylightSettings& settings) {
  const RoomEvaluator room(config, settings);
  IlluminanceTerms t;
  t.diffuse = sky.sky_horizontal_lux * room.diffuse_coef(point);
  t.interreflected = sky.sky_horizontal_lux * room.interreflected_coef();
  if (sky.sun.altitude > 0.0 && sky.direct_normal_lux > 0.0) {
    const Vec3 s = sun_direction_room(sky.sun, config.orientation);
    if (room.hits(point, s.x, -s.y, s.z)) t.direct = sky.direct_normal_lux * s.z * room.transmittance();
  }
  return t;
}

double proxy_illuminance(const Vec3& point, const RoomConfig& config, const SkyState& sky,
                         const DaylightSettings& settings) {
  return proxy_illuminance_terms(point, config, sky, settings).total();
}

PseudoClimate PseudoClimate::generate(const Location& location, std::uint64_t seed, const DaylightSettings& s) {
  PseudoClimate c;
  c.location = location;
  c.seed = seed;
  std::mt19937_64 rng(seed);
  const int per_day = std::max(0, s.occupied_end_hour - s.occupied_start_hour);
  c.hours.reserve(static_cast<std::size_t>(365 * per_day));
  for (int day = 1; day <= 365; ++day) {
    // Cloud cover is persistent over a day: mostly clear, otherwise heavy.
    const bool clear = unit_uniform(rng) < s.clear_day_probability;
    const double u = unit_uniform(rng);
    const double cloud = clear ? 0.2 * u : 0.5 + 0.5 * u;
    for (int hour = s.occupied_start_hour; hour < s.occupied_end_hour; ++hour) {
      SkyState st;
      st.sun = sun_position(location, day, hour + 0.5);
      const double alt = st.sun.altitude;
      st.direct_normal_lux = cloud < 0.5 ? (1.0 - cloud) * clear_sky_direct_normal_lux(alt) : 0.0;
      st.sky_horizontal_lux =
          (1.0 - cloud) * clear_sky_diffuse_horizontal_lux(alt) + cloud * overcast_horizontal_lux(alt);
      c.hours.push_back(st);
    }
  }
  return c;
}

AnnualPointSeries annual_point_series(const RoomConfig& config, const AnalysisGrid& grid,
                                      const PseudoClimate& climate, const DaylightSettings& settings) {
  AnnualPointSeries series;
  series.points = grid.size();
  series.hours = climate.hours.size();
  series.lux.assign(series.points * series.hours, 0.0);
  series.direct_sun.assign(series.points * series.hours, 0);
  simulate(config, grid, climate, settings, [&](std::size_t i, std::size_t k, double lux, bool direct) {
    series.lux[i * series.hours + k] = lux;
    series.direct_sun[i * series.hours + k] = direct;
  });
  return series;
}

DaylightMetrics metrics_from_series(const AnnualPointSeries& series, const DaylightSettings& settings) {
  std::vector<PointTally> tallies(series.points);
  for (std::size_t i = 0; i < series.points; ++i) {
    for (std::size_t k = 0; k < series.hours; ++k) {
      tallies[i].add(series.illuminance(i, k), series.direct(i, k), settings);
    }
  }
  return aggregate(tallies, series.hours, settings);
}

DaylightMetrics annual_metrics(const RoomConfig& config, const AnalysisGrid& grid, const PseudoClimate& climate,
                               const DaylightSettings& settings) {
  std::vector<PointTally> tallies(grid.size());
  simulate(config, grid, climate, settings,
           [&](std::size_t i, std::size_t, double lux, bool direct) { tallies[i].add(lux, direct, settings); });
  return aggregate(tallies, climate.hours.size(), settings);
}

}  // namespace lightbox
