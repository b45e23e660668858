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

namespace lightbox {

struct Location {
  double latitude = 0.0;     // degrees north
  double longitude = 0.0;    // degrees east
  double tz_meridian = 0.0;  // degrees east
  int year = 2026;           // reference year for day numbering

  static Location tehran() { return {35.69, 51.39, 52.5, 2026}; }
};

struct SunPosition {
  double altitude = 0.0;  // degrees above horizon
  double azimuth = 0.0;   // degrees clockwise from north, [0, 360)
  int day = 1;
  double solar_hour = 12.0;  // apparent solar time
};

/// Low-precision almanac sun (about 0.01 deg over 1950..2050); day in 1..366
/// of `year`, at utc_hour universal time.
double solar_declination_deg(int day, double utc_hour = 12.0, int year = 2026);
double equation_of_time_minutes(int day, double utc_hour = 12.0, int year = 2026);

/// Apparent solar time for a local standard (clock) time.
double apparent_solar_hour(const Location& where, int day, double clock_hour);

/// Declination taken at solar_hour as if on the prime meridian.
SunPosition sun_position_at_solar_time(double latitude, int day, double solar_hour, int year = 2026);

/// Sun position for a local standard (clock) time.
SunPosition sun_position(const Location& where, int day, double clock_hour);

}  // namespace lightbox
