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
#include "views.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "error.hpp"
#include "textio.hpp"

namespace lightbox {

namespace {

bool factor_ok(const Vec3& p, std::span<const WindowRect> rects, const ViewSettings& s, double& omega, int& rating) {
  omega = glazing_solid_angle(Vec3{p.x, p.y, s.eye_height}, rects);
  rating = view_factor_rating(omega, s);
  return rating >= s.compliant_rating;
}

bool depth_ok(const Vec3& p, const RoomConfig& c, const ViewSettings& s) {
  return p.y <= s.depth_multiple * c.head_height() + 1e-12;
}

bool range_ok(const Vec3& p, std::span<const WindowRect> rects, const ViewSettings& s) {
  return view_spread(p.x, p.y, rects) >= deg2rad(s.range_threshold_deg) - 1e-12;
}

double fraction(std::size_t hits, std::size_t n) {
  return n == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace

double corner_rect_solid_angle(double a, double b, double d) {
  return std::atan(a * b / (d * std::sqrt(a * a + b * b + d * d)));
}

double glazing_solid_angle(const Vec3& eye, std::span<const WindowRect> rects) {
  const double d = eye.y;
  if (!(d > 0.0)) fail(ErrorKind::InvalidArgument, "eye must lie inside the room, off the glazing plane");
  double total = 0.0;
  for (const auto& r : rects) {
    const double a1 = r.left - eye.x;
    const double a2 = r.right() - eye.x;
    const double b1 = r.sill - eye.z;
    const double b2 = r.top() - eye.z;
    total += corner_rect_solid_angle(a2, b2, d) - corner_rect_solid_angle(a1, b2, d) -
             corner_rect_solid_angle(a2, b1, d) + corner_rect_solid_angle(a1, b1, d);
  }
  return total;
}

int view_factor_rating(double omega, const ViewSettings& s) {
  int rating = 1;
  for (double edge : s.rating_thresholds) {
    if (omega >= edge) ++rating;
  }
  return rating;
}

double view_spread(double x, double y, std::span<const WindowRect> rects) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : rects) {
    if (!(r.width > 0.0) || !(r.height > 0.0)) continue;
    lo = std::min(lo, std::atan2(r.left - x, y));
    hi = std::max(hi, std::atan2(r.right() - x, y));
  }
  return hi > lo ? hi - lo : 0.0;
}

bool quality_views_pass(double factor, double depth, double range, double threshold) {
  const int passing = (factor >= threshold) + (depth >= threshold) + (range >= threshold);
  return passing >= 2;
}

ViewResult evaluate_views(const RoomConfig& c, const AnalysisGrid& grid, const ViewSettings& s) {
  const auto rects = window_rects(c);
  ViewResult res;
  res.points.reserve(grid.size());
  std::size_t nf = 0, nd = 0, nr = 0;
  for (const auto& p : grid.points) {
    PointView pv;
    pv.x = p.x;
    pv.y = p.y;
    pv.factor_compliant = factor_ok(p, rects, s, pv.solid_angle, pv.rating);
    pv.depth_compliant = depth_ok(p, c, s);
    pv.range_compliant = range_ok(p, rects, s);
    nf += pv.factor_compliant;
    nd += pv.depth_compliant;
    nr += pv.range_compliant;
    res.points.push_back(pv);
  }
  res.view_factor_fraction = fraction(nf, grid.size());
  res.view_depth_fraction = fraction(nd, grid.size());
  res.view_range_fraction = fraction(nr, grid.size());
  res.quality_views_pass = quality_views_pass(res.view_factor_fraction, res.view_depth_fraction,
                                              res.view_range_fraction, s.area_threshold);
  return res;
}

double view_factor_fraction(const RoomConfig& c, const AnalysisGrid& grid, const ViewSettings& s) {
  const auto rects = window_rects(c);
  std::size_t n = 0;
  double omega = 0.0;
  int rating = 0;
  for (const auto& p : grid.points) n += factor_ok(p, rects, s, omega, rating);
  return fraction(n, grid.size());
}

double view_depth_fraction(const RoomConfig& c, const AnalysisGrid& grid, const ViewSettings& s) {
  std::size_t n = 0;
  for (const auto& p : grid.points) n += depth_ok(p, c, s);
  return fraction(n, grid.size());
}

double view_range_fraction(const RoomConfig& c, const AnalysisGrid& grid, const ViewSettings& s) {
  const auto rects = window_rects(c);
  std::size_t n = 0;
  for (const auto& p : grid.points) n += range_ok(p, rects, s);
  return fraction(n, grid.size());
}

void write_point_table(std::ostream& out, const ViewResult& r) {
  out << "x,y,solid_angle,rating,factor_compliant,depth_compliant,range_compliant\n";
  for (const auto& p : r.points) {
    out << text::format_double(p.x) << ',' << text::format_double(p.y) << ','
        << text::format_double(p.solid_angle) << ',' << p.rating << ',' << int(p.factor_compliant) << ','
        << int(p.depth_compliant) << ',' << int(p.range_compliant) << '\n';
  }
}

}  // namespace lightbox
