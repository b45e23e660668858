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
#include <gtest/gtest.h>

#include "error.hpp"
#include "oracles.hpp"
#include "solar.hpp"

namespace lightbox {
namespace {

TEST(Solar, DeclinationExtremes) {
  EXPECT_NEAR(solar_declination_deg(172), 23.44, 0.1);
  EXPECT_NEAR(solar_declination_deg(355), -23.44, 0.1);
  EXPECT_NEAR(solar_declination_deg(80), 0.0, 0.6);
}

TEST(Solar, EquationOfTimeSeasons) {
  EXPECT_NEAR(equation_of_time_minutes(307), 16.4, 0.6);   // early November
  EXPECT_NEAR(equation_of_time_minutes(42), -14.2, 0.6);   // mid February
  EXPECT_THROW(equation_of_time_minutes(0), Error);
  EXPECT_THROW(equation_of_time_minutes(367), Error);
}

TEST(Solar, NoonAltitudeAndSymmetry) {
  const double lat = 35.69;
  for (int day : {21, 172, 264, 355}) {
    const auto noon = sun_position_at_solar_time(lat, day, 12.0);
    EXPECT_NEAR(noon.altitude, 90.0 - lat + solar_declination_deg(day), 1e-9);
    const auto am = sun_position_at_solar_time(lat, day, 9.0);
    const auto pm = sun_position_at_solar_time(lat, day, 15.0);
    // Six hours apart the declination moves by at most about 0.1 degree.
    EXPECT_NEAR(am.altitude, pm.altitude, 0.15);
    EXPECT_NEAR(am.azimuth + pm.azimuth, 360.0, 0.3);
    EXPECT_LT(am.azimuth, 180.0);
  }
}

TEST(Solar, ClockToSolarTime) {
  const auto tehran = Location::tehran();
  // 4 minutes per degree west of the zone meridian, plus the equation of time.
  const double expect = 12.0 + (equation_of_time_minutes(100, 8.5) + 4.0 * (51.39 - 52.5)) / 60.0;
  EXPECT_NEAR(apparent_solar_hour(tehran, 100, 12.0), expect, 1e-12);
}

TEST(Solar, AgreesWithIndependentCalculator) {
  const auto t = Location::tehran();
  for (int day : {15, 46, 105, 172, 200, 288, 340}) {
    for (double hour : {8.5, 12.0, 16.5}) {
      const auto ours = sun_position(t, day, hour);
      const auto ref = oracle::noaa_sun(t.latitude, t.longitude, 3.5, oracle::date_of(2026, day), hour);
      EXPECT_NEAR(ours.altitude, ref.elevation, 0.05) << day << " " << hour;
      EXPECT_LT(oracle::angle_gap_deg(ours.azimuth, ref.azimuth), 0.05) << day << " " << hour;
    }
  }
}

TEST(Solar, DeclinationFollowsTimeOfDay) {
  // Near the equinox the declination climbs about 0.4 degrees a day.
  EXPECT_NEAR(solar_declination_deg(80, 18.0) - solar_declination_deg(80, 6.0), 0.2, 0.03);
}

TEST(Solar, ReferenceYearShiftsTheEquinox) {
  // The equinox comes about six hours later each common year.
  EXPECT_NEAR(solar_declination_deg(80, 12.0, 2027) - solar_declination_deg(80, 12.0, 2026), -0.096, 0.02);
  // In a leap year day 80 is one calendar day earlier.
  EXPECT_NEAR(solar_declination_deg(81, 12.0, 2028), solar_declination_deg(80, 12.0, 2027) + 0.3, 0.05);
}

TEST(Solar, RejectsPolarLatitude) { EXPECT_THROW(sun_position_at_solar_time(90.0, 10, 12.0), Error); }

}  // namespace
}  // namespace lightbox
