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

#include <random>
#include <sstream>

#include "error.hpp"
#include "oracles.hpp"
#include "views.hpp"

namespace lightbox {
namespace {

TEST(SolidAngle, CornerFormulaLimits) {
  // Small patch: a*b / d^2.
  EXPECT_NEAR(corner_rect_solid_angle(0.01, 0.01, 10.0), 1e-6, 1e-10);
  // Unbounded quadrant of a plane.
  EXPECT_NEAR(corner_rect_solid_angle(1e9, 1e9, 1.0), kPi / 2.0, 1e-6);
  EXPECT_EQ(corner_rect_solid_angle(0.0, 1.0, 1.0), 0.0);
}

TEST(SolidAngle, CentredSquare) {
  // Four corner rectangles of 1 x 1 at unit distance: 4 atan(1/sqrt(3)).
  const WindowRect r{0.0, 0.0, 2.0, 2.0};
  EXPECT_NEAR(glazing_solid_angle({1.0, 1.0, 1.0}, std::span(&r, 1)), 2.0 * kPi / 3.0, 1e-12);
}

TEST(SolidAngle, OffAxisDecompositionMatchesSampling) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 4; ++i) {
    const WindowRect r{0.5 + u(rng), 0.6 + u(rng), 0.8 + 2 * u(rng), 0.8 + u(rng)};
    const Vec3 eye{3.0 * u(rng), 0.4 + 1.5 * u(rng), 1.2};
    const double mc = oracle::monte_carlo_solid_angle(eye.x, eye.y, eye.z,
                                                      {{r.left, r.right(), r.sill, r.top()}}, 400, 11 + i);
    EXPECT_NEAR(glazing_solid_angle(eye, std::span(&r, 1)), mc, 0.02 * mc);
  }
}

TEST(SolidAngle, RejectsEyeOnWall) {
  const WindowRect r{0.0, 0.0, 1.0, 1.0};
  EXPECT_THROW(glazing_solid_angle({0.5, 0.0, 0.5}, std::span(&r, 1)), Error);
}

TEST(Rating, Bins) {
  EXPECT_EQ(view_factor_rating(0.01), 1);
  EXPECT_EQ(view_factor_rating(0.05), 2);
  EXPECT_EQ(view_factor_rating(0.3), 3);
  EXPECT_EQ(view_factor_rating(0.5), 4);
  EXPECT_EQ(view_factor_rating(1.5), 5);
}

TEST(Spread, MatchesSweptBearings) {
  RoomConfig c;
  c.width = 8.0;
  c.depth = 10.0;
  for (auto d : {Divisions::OneFullWidth, Divisions::ThreeEqual}) {
    c.divisions = d;
    const auto rects = window_rects(c);
    std::vector<std::pair<double, double>> spans;
    for (const auto& r : rects) spans.emplace_back(r.left, r.right());
    for (double x : {0.25, 2.1, 4.0, 7.75}) {
      for (double y : {0.25, 1.3, 4.0, 9.75}) {
        const double swept = oracle::swept_spread_deg(x, y, spans);
        EXPECT_NEAR(rad2deg(view_spread(x, y, rects)), swept, 0.02) << x << "," << y;
      }
    }
  }
}

TEST(Spread, CentredPoint) {
  const WindowRect r{0.0, 1.0, 4.0, 1.0};
  EXPECT_NEAR(view_spread(2.0, 2.0, std::span(&r, 1)), kPi / 2.0, 1e-12);
}

TEST(QualityViews, TwoOfThreeTruthTable) {
  for (int mask = 0; mask < 8; ++mask) {
    const double f = mask & 1 ? 0.75 : 0.74;
    const double d = mask & 2 ? 0.9 : 0.1;
    const double r = mask & 4 ? 1.0 : 0.5;
    const int passing = (mask & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1);
    EXPECT_EQ(quality_views_pass(f, d, r), passing >= 2) << mask;
  }
}

TEST(ViewFractions, DepthBandAndHalfDisc) {
  RoomConfig c;
  c.width = 6.0;
  c.depth = 10.0;
  c.sill_height = 0.7;
  c.window_height = 1.5;  // reach 6.6 m
  const auto g = build_grid(c);
  const auto v = evaluate_views(c, g);
  EXPECT_NEAR(v.view_depth_fraction, oracle::depth_band_fraction(3 * 2.2, 10.0), 1.0 / g.rows);
  EXPECT_NEAR(v.view_range_fraction, oracle::full_width_range_fraction(6.0, 10.0), 1.0 / g.rows);
  EXPECT_EQ(v.points.size(), g.size());
  EXPECT_DOUBLE_EQ(v.view_depth_fraction, view_depth_fraction(c, g));
  EXPECT_DOUBLE_EQ(v.view_range_fraction, view_range_fraction(c, g));
  EXPECT_DOUBLE_EQ(v.view_factor_fraction, view_factor_fraction(c, g));
}

TEST(ViewFractions, IndependentOfNonGeometricVariables) {
  RoomConfig base;
  base.divisions = Divisions::ThreeEqual;
  const auto g = build_grid(base);
  const auto ref = evaluate_views(base, g);
  for (auto o : {Orientation::North, Orientation::East, Orientation::West}) {
    for (double refl : {0.2, 0.7}) {
      for (auto s : {Shading::None, Shading::HorizontalLouvre}) {
        RoomConfig c = base;
        c.orientation = o;
        c.reflectance = refl;
        c.shading = s;
        const auto v = evaluate_views(c, g);
        EXPECT_EQ(v.view_factor_fraction, ref.view_factor_fraction);
        EXPECT_EQ(v.view_depth_fraction, ref.view_depth_fraction);
        EXPECT_EQ(v.view_range_fraction, ref.view_range_fraction);
      }
    }
  }
}

TEST(ViewFractions, LargerWindowSeesMore) {
  RoomConfig small;
  small.window_height = 1.2;
  RoomConfig tall = small;
  tall.window_height = 2.4;
  tall.sill_height = 0.5;
  const auto g = build_grid(small);
  EXPECT_GE(view_factor_fraction(tall, g), view_factor_fraction(small, g));
  EXPECT_GE(view_depth_fraction(tall, g), view_depth_fraction(small, g));
}

TEST(PointTable, HasHeaderAndOneLinePerPoint) {
  RoomConfig c;
  const auto g = build_grid(c);
  std::ostringstream out;
  write_point_table(out, evaluate_views(c, g));
  const auto s = out.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')), g.size() + 1);
}

}  // namespace
}  // namespace lightbox
