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
#include "solar.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "error.hpp"
#include "geometry.hpp"

namespace lightbox {

namespace {

void check_day(int day) {
  if (day < 1 || day > 366) fail(ErrorKind::InvalidArgument, "day of year out of range: " + std::to_string(day));
}

struct Ecliptic {
  double declination;  // degrees
  double eot;          // minutes
};

// Days from the J2000.0 epoch to the instant.
double days_from_j2000(int year, int day, double utc_hour) {
  using namespace std::chrono;
  const sys_days jan1{std::chrono::year{year} / January / 1};
  const sys_days epoch{std::chrono::year{2000} / January / 1};
  return static_cast<double>((jan1 - epoch).count()) + (day - 1) + (utc_hour - 12.0) / 24.0;
}

Ecliptic ecliptic(int day, double utc_hour, int year) {
  check_day(day);
  const double n = days_from_j2000(year, day, utc_hour);
  const double mean_long = std::fmod(280.460 + 0.9856474 * n, 360.0);
  const double anomaly = deg2rad(std::fmod(357.528 + 0.9856003 * n, 360.0));
  const double lambda = deg2rad(mean_long + 1.915 * std::sin(anomaly) + 0.020 * std::sin(2.0 * anomaly));
  const double eps = deg2rad(23.439 - 0.0000004 * n);
  const double ra = rad2deg(std::atan2(std::cos(eps) * std::sin(lambda), std::cos(lambda)));
  double diff = std::fmod(mean_long - ra, 360.0);
  if (diff > 180.0) diff -= 360.0;
  if (diff < -180.0) diff += 360.0;
  return {rad2deg(std::asin(std::sin(eps) * std::sin(lambda))), 4.0 * diff};
}

}  // namespace

double solar_declination_deg(int day, double utc_hour, int year) { return ecliptic(day, utc_hour, year).declination; }

double equation_of_time_minutes(int day, double utc_hour, int year) { return ecliptic(day, utc_hour, year).eot; }

double apparent_solar_hour(const Location& w, int day, double clock_hour) {
  const double utc = clock_hour - w.tz_meridian / 15.0;
  return clock_hour + (equation_of_time_minutes(day, utc, w.year) + 4.0 * (w.longitude - w.tz_meridian)) / 60.0;
}

namespace {

SunPosition position(double latitude, int day, double solar_hour, double utc_hour, int year) {
  if (!(latitude > -90.0 && latitude < 90.0)) fail(ErrorKind::InvalidArgument, "latitude must lie in (-90, 90)");
  const double phi = deg2rad(latitude);
  const double delta = deg2rad(solar_declination_deg(day, utc_hour, year));
  const double h = deg2rad(15.0 * (solar_hour - 12.0));

  const double sin_alt = std::sin(phi) * std::sin(delta) + std::cos(phi) * std::cos(delta) * std::cos(h);
  const double alt = std::asin(std::clamp(sin_alt, -1.0, 1.0));

  // Azimuth from north; the arccos branch is chosen by the hour-angle sign.
  const double denom = std::cos(alt) * std::cos(phi);
  double az = 0.0;
  if (std::abs(denom) > 1e-12) {
    const double cos_az = (std::sin(delta) - std::sin(alt) * std::sin(phi)) / denom;
    az = std::acos(std::clamp(cos_az, -1.0, 1.0));
    if (std::sin(h) > 0.0) az = 2.0 * kPi - az;
  }
  SunPosition s;
  s.altitude = rad2deg(alt);
  s.azimuth = std::fmod(rad2deg(az) + 360.0, 360.0);
  s.day = day;
  s.solar_hour = solar_hour;
  return s;
}

}  // namespace

SunPosition sun_position_at_solar_time(double latitude, int day, double solar_hour, int year) {
  return position(latitude, day, solar_hour, solar_hour, year);
}

SunPosition sun_position(const Location& where, int day, double clock_hour) {
  return position(where.latitude, day, apparent_solar_hour(where, day, clock_hour),
                  clock_hour - where.tz_meridian / 15.0, where.year);
}

}  // namespace lightbox
