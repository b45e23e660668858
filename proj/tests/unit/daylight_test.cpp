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

#include <cmath>

#include "daylight.hpp"
#include "error.hpp"

namespace lightbox {
namespace {

const PseudoClimate& climate() {
  static const PseudoClimate c = PseudoClimate::generate(Location::tehran(), 42);
  return c;
}

TEST(Climate, OccupiedHoursAndDeterminism) {
  const auto& a = climate();
  EXPECT_EQ(a.hours.size(), 3650u);
  const auto b = PseudoClimate::generate(Location::tehran(), 42);
  const auto other = PseudoClimate::generate(Location::tehran(), 43);
  bool differs = false;
  for (std::size_t i = 0; i < a.hours.size(); ++i) {
    EXPECT_EQ(a.hours[i].sky_horizontal_lux, b.hours[i].sky_horizontal_lux);
    EXPECT_EQ(a.hours[i].direct_normal_lux, b.hours[i].direct_normal_lux);
    EXPECT_GE(a.hours[i].sky_horizontal_lux, 0.0);
    EXPECT_GE(a.hours[i].direct_normal_lux, 0.0);
    differs |= a.hours[i].sky_horizontal_lux != other.hours[i].sky_horizontal_lux;
  }
  EXPECT_TRUE(differs);
}

TEST(Climate, ClearAndOvercastDaysBothOccur) {
  std::size_t sunny = 0, dull = 0;
  for (std::size_t d = 0; d < 365; ++d) {
    const auto& noon = climate().hours[d * 10 + 4];
    (noon.direct_normal_lux > 0.0 ? sunny : dull) += 1;
  }
  EXPECT_GT(sunny, 200u);
  EXPECT_GT(dull, 60u);
}

TEST(SkyCurves, MonotoneInAltitude) {
  double prev_dn = 0.0, prev_dh = 0.0;
  for (double alt = 5.0; alt <= 90.0; alt += 5.0) {
    const double dn = clear_sky_direct_normal_lux(alt);
    const double dh = clear_sky_diffuse_horizontal_lux(alt);
    EXPECT_GT(dn, prev_dn);
    EXPECT_GT(dh, prev_dh);
    prev_dn = dn;
    prev_dh = dh;
  }
  EXPECT_EQ(clear_sky_direct_normal_lux(-1.0), 0.0);
  EXPECT_LT(clear_sky_direct_normal_lux(90.0), 127500.0);
}

TEST(SunDirection, UnitLengthAndFacing) {
  SunPosition noon{60.0, 180.0, 172, 12.0};
  const auto w = sun_direction_world(noon);
  EXPECT_NEAR(norm(w), 1.0, 1e-12);
  EXPECT_NEAR(w.y, -0.5, 1e-12);  // due south
  // In front of a south facade the sun lies on the outside (negative room y).
  EXPECT_LT(sun_direction_room(noon, Orientation::South).y, 0.0);
  EXPECT_GT(sun_direction_room(noon, Orientation::North).y, 0.0);
}

TEST(DirectSun, FacadeFacingTheSun) {
  RoomConfig c;
  c.orientation = Orientation::South;
  const SunPosition winter{30.0, 180.0, 355, 12.0};
  const Vec3 near{3.0, 1.0, 0.76};
  EXPECT_TRUE(direct_sun_hits(near, c, winter));
  c.orientation = Orientation::North;
  EXPECT_FALSE(direct_sun_hits(near, c, winter));
  c.orientation = Orientation::South;
  EXPECT_FALSE(direct_sun_hits(near, c, SunPosition{-5.0, 180.0, 355, 7.0}));
  // Patch reaches (head - 0.76) / tan(30 deg) = 4.33 m at most.
  EXPECT_FALSE(direct_sun_hits({3.0, 4.6, 0.76}, c, winter));
}

TEST(Louvre, BlocksSteepRaysOnly) {
  const DaylightSettings s;
  const WindowRect r{0.0, 0.9, 2.0, 1.5};
  // Ray leaving at mid-slat with a 45 degree rise meets the next slat.
  EXPECT_TRUE(louvre_blocks(0.95, 1.0, 1.0, r, s));
  // Nearly horizontal ray clears the slat depth.
  EXPECT_FALSE(louvre_blocks(0.95, 1.0, 0.01, r, s));
  EXPECT_FALSE(louvre_blocks(0.95, 0.0, 1.0, r, s));
}

TEST(Louvre, SectionOpenFractionMatchesProfileAngle) {
  // Slats as deep as their pitch: in section, a ray at profile angle t
  // clears the slat above only if it leaves the glass within the lowest
  // 1 - tan(t) of the gap, so nothing passes beyond 45 degrees.
  const DaylightSettings s;
  const WindowRect r{0.0, 0.9, 2.0, 1.5};
  for (double deg : {10.0, 30.0, 44.0, 46.0, 60.0}) {
    const double up = std::tan(deg * kPi / 180.0);
    std::size_t open = 0, total = 0;
    for (double z = r.sill + 5e-5; z < r.top(); z += 1e-4, ++total) open += !louvre_blocks(z, 1.0, up, r, s);
    const double expect = std::max(0.0, 1.0 - up);
    EXPECT_NEAR(static_cast<double>(open) / total, expect, 2e-3) << deg;
  }
}

TEST(Illuminance, TermsRespondToTheirDrivers) {
  const SkyState sky{SunPosition{40.0, 180.0, 100, 12.0}, 60000.0, 15000.0};
  RoomConfig c;
  const Vec3 p{3.0, 2.0, 0.76};
  const auto base = proxy_illuminance_terms(p, c, sky);
  EXPECT_GT(base.direct, 0.0);
  EXPECT_GT(base.diffuse, 0.0);
  EXPECT_GT(base.interreflected, 0.0);
  EXPECT_DOUBLE_EQ(base.total(), proxy_illuminance(p, c, sky));

  RoomConfig bright = c;
  bright.reflectance = 0.7;
  EXPECT_GT(proxy_illuminance_terms(p, bright, sky).interreflected, base.interreflected);
  EXPECT_EQ(proxy_illuminance_terms(p, bright, sky).diffuse, base.diffuse);

  const auto deep = proxy_illuminance_terms({3.0, 6.5, 0.76}, c, sky);
  EXPECT_LT(deep.diffuse, base.diffuse);

  RoomConfig shaded = c;
  shaded.shading = Shading::HorizontalLouvre;
  EXPECT_LT(proxy_illuminance_terms(p, shaded, sky).diffuse, base.diffuse);
}

TEST(AnnualMetrics, BoundedAndSeriesAgree) {
  RoomConfig c;
  c.width = 3.0;
  c.depth = 4.0;
  const auto g = build_grid(c);
  const auto series = annual_point_series(c, g, climate());
  EXPECT_EQ(series.points, g.size());
  EXPECT_EQ(series.hours, 3650u);
  const auto a = metrics_from_series(series);
  const auto b = annual_metrics(c, g, climate());
  for (double v : {a.udi, a.m_da, a.s_da, a.ase, a.s_vd}) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  EXPECT_EQ(a.udi, b.udi);
  EXPECT_EQ(a.m_da, b.m_da);
  EXPECT_EQ(a.s_da, b.s_da);
  EXPECT_EQ(a.ase, b.ase);
  EXPECT_EQ(a.s_vd, b.s_vd);
}

TEST(AnnualMetrics, ThresholdsFromHourlySeries) {
  RoomConfig c;
  const auto g = build_grid(c);
  const auto series = annual_point_series(c, g, climate());
  const DaylightSettings s;
  double da_sum = 0.0;
  std::size_t sda = 0, ase = 0;
  for (std::size_t p = 0; p < series.points; ++p) {
    std::size_t lit = 0, sun = 0;
    for (std::size_t h = 0; h < series.hours; ++h) {
      lit += series.illuminance(p, h) >= s.da_threshold_lux;
      sun += series.direct(p, h);
    }
    const double da = static_cast<double>(lit) / series.hours;
    da_sum += da;
    sda += da >= 0.5;
    ase += sun >= s.ase_hours;
  }
  const auto m = metrics_from_series(series);
  EXPECT_NEAR(m.m_da, da_sum / series.points, 1e-12);
  EXPECT_NEAR(m.s_da, static_cast<double>(sda) / series.points, 1e-12);
  EXPECT_NEAR(m.ase, static_cast<double>(ase) / series.points, 1e-12);
}

TEST(AnnualMetrics, OrientationAndShadingEffects) {
  RoomConfig south;
  const auto g = build_grid(south);
  RoomConfig north = south;
  north.orientation = Orientation::North;
  RoomConfig shaded = south;
  shaded.shading = Shading::HorizontalLouvre;
  const auto ms = annual_metrics(south, g, climate());
  EXPECT_GT(ms.ase, annual_metrics(north, g, climate()).ase);
  EXPECT_LE(annual_metrics(shaded, g, climate()).ase, ms.ase);
  EXPECT_LE(annual_metrics(shaded, g, climate()).m_da, ms.m_da);
}

}  // namespace
}  // namespace lightbox
