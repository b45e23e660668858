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
// Reference implementations used only by tests. None of them shares code
// with the library: each one takes a different route to the same number.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double rad(double d) { return d * kPi / 180.0; }
inline double deg(double r) { return r * 180.0 / kPi; }

struct CalendarDate {
  int year = 2026;
  int month = 1;
  int day = 1;
};

inline CalendarDate date_of(int year, int day_of_year) {
  static const int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  int m = 0;
  int d = day_of_year;
  while (true) {
    const int n = len[m] + (m == 1 && leap ? 1 : 0);
    if (d <= n) break;
    d -= n;
    ++m;
  }
  return {year, m + 1, d};
}

inline double julian_day(const CalendarDate& c) {
  int y = c.year;
  int m = c.month;
  if (m <= 2) {
    y -= 1;
    m += 12;
  }
  const int a = y / 100;
  const int b = 2 - a + a / 4;
  return std::floor(365.25 * (y + 4716)) + std::floor(30.6001 * (m + 1)) + c.day + b - 1524.5;
}

struct Sun {
  double elevation = 0.0;  // geometric, no refraction
  double azimuth = 0.0;    // clockwise from north
};

/// NOAA solar calculator (Meeus series), geometric elevation.
inline Sun noaa_sun(double lat, double lon, double tz_hours, const CalendarDate& date, double clock_hour) {
  const double jd = julian_day(date) + (clock_hour - tz_hours) / 24.0;
  const double jc = (jd - 2451545.0) / 36525.0;
  const double l0 = std::fmod(280.46646 + jc * (36000.76983 + jc * 0.0003032), 360.0);
  const double m = 357.52911 + jc * (35999.05029 - 0.0001537 * jc);
  const double e = 0.016708634 - jc * (0.000042037 + 0.0000001267 * jc);
  const double c = std::sin(rad(m)) * (1.914602 - jc * (0.004817 + 0.000014 * jc)) +
                   std::sin(rad(2 * m)) * (0.019993 - 0.000101 * jc) + std::sin(rad(3 * m)) * 0.000289;
  const double true_long = l0 + c;
  const double omega = 125.04 - 1934.136 * jc;
  const double app_long = true_long - 0.00569 - 0.00478 * std::sin(rad(omega));
  const double mean_obliq =
      23.0 + (26.0 + (21.448 - jc * (46.815 + jc * (0.00059 - jc * 0.001813))) / 60.0) / 60.0;
  const double obliq = mean_obliq + 0.00256 * std::cos(rad(omega));
  const double decl = deg(std::asin(std::sin(rad(obliq)) * std::sin(rad(app_long))));
  const double y = std::pow(std::tan(rad(obliq / 2.0)), 2);
  const double eot = 4.0 * deg(y * std::sin(2 * rad(l0)) - 2 * e * std::sin(rad(m)) +
                               4 * e * y * std::sin(rad(m)) * std::cos(2 * rad(l0)) -
                               0.5 * y * y * std::sin(4 * rad(l0)) - 1.25 * e * e * std::sin(2 * rad(m)));
  double tst = std::fmod(clock_hour * 60.0 + eot + 4.0 * lon - 60.0 * tz_hours, 1440.0);
  if (tst < 0) tst += 1440.0;
  const double ha = tst / 4.0 < 0 ? tst / 4.0 + 180.0 : tst / 4.0 - 180.0;
  const double cos_zen = std::sin(rad(lat)) * std::sin(rad(decl)) +
                         std::cos(rad(lat)) * std::cos(rad(decl)) * std::cos(rad(ha));
  const double zen = deg(std::acos(std::clamp(cos_zen, -1.0, 1.0)));
  const double a = deg(std::acos(std::clamp(
      (std::sin(rad(lat)) * std::cos(rad(zen)) - std::sin(rad(decl))) / (std::cos(rad(lat)) * std::sin(rad(zen))),
      -1.0, 1.0)));
  const double az = ha > 0 ? std::fmod(a + 180.0, 360.0) : std::fmod(540.0 - a, 360.0);
  return {90.0 - zen, az};
}

inline double angle_gap_deg(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

/// Glazing rectangle in the wall plane y = 0: x in [x0, x1], z in [z0, z1].
struct Pane {
  double x0, x1, z0, z1;
};

/// Solid angle subtended at (ex, ey, ez), ey > 0, by the panes. Jittered
/// stratified sampling of the hemisphere facing the wall, uniform in
/// cos(theta) and phi so every sample carries 2*pi/n steradians.
inline double monte_carlo_solid_angle(double ex, double ey, double ez, const std::vector<Pane>& panes,
                                      std::size_t per_axis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < per_axis; ++i) {
    for (std::size_t j = 0; j < per_axis; ++j) {
      const double u = (i + jitter(rng)) / per_axis;  // cos(theta) about -y
      const double phi = 2.0 * kPi * (j + jitter(rng)) / per_axis;
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      const double dy = -u;
      const double dx = s * std::cos(phi);
      const double dz = s * std::sin(phi);
      if (u <= 0.0) continue;
      const double t = ey / -dy;
      const double hx = ex + t * dx;
      const double hz = ez + t * dz;
      for (const auto& p : panes) {
        if (hx >= p.x0 && hx <= p.x1 && hz >= p.z0 && hz <= p.z1) {
          ++hits;
          break;
        }
      }
    }
  }
  return 2.0 * kPi * static_cast<double>(hits) / static_cast<double>(per_axis * per_axis);
}

/// Plan-view angular spread of the glazing seen from (x, y), found by
/// sweeping bearings and casting each one onto the wall line.
inline double swept_spread_deg(double x, double y, const std::vector<std::pair<double, double>>& spans,
                               double step_deg = 0.01) {
  double first = -1.0;
  double last = -1.0;
  for (double b = step_deg / 2; b < 180.0; b += step_deg) {
    // bearing measured from +x towards the wall (-y)
    const double hx = x + y * std::cos(rad(b)) / std::sin(rad(b));
    for (const auto& [lo, hi] : spans) {
      if (hx >= lo && hx <= hi) {
        if (first < 0) first = b;
        last = b;
        break;
      }
    }
  }
  return first < 0 ? 0.0 : last - first + step_deg;
}

/// Floor share within distance r of the window centre for a full-width
/// window, r = W / 2 <= D: the half disc over the floor rectangle.
inline double full_width_range_fraction(double width, double depth) { return kPi * width / (8.0 * depth); }

/// Floor share no deeper than reach into a room of the given depth.
inline double depth_band_fraction(double reach, double depth) { return std::min(1.0, reach / depth); }

}  // namespace oracle
