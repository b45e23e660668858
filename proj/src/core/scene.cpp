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
#include "scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "error.hpp"
#include "textio.hpp"

namespace lightbox {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <typename T>
Range range_of(const std::vector<T>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {static_cast<double>(*lo), static_cast<double>(*hi)};
}

double scale(double v, const Range& r, bool& clamped) {
  if (v < r.lo) {
    clamped = true;
    return 0.0;
  }
  if (v > r.hi) {
    clamped = true;
    return 1.0;
  }
  // A degenerate range has a single admissible value.
  if (r.hi == r.lo) return 0.0;
  return (v - r.lo) / (r.hi - r.lo);
}

}  // namespace

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::North: return "N";
    case Orientation::East: return "E";
    case Orientation::South: return "S";
    case Orientation::West: return "W";
  }
  return "?";
}

std::string_view to_string(Shading s) {
  return s == Shading::None ? "none" : "louvre";
}

std::string_view to_string(Divisions d) {
  return d == Divisions::OneFullWidth ? "one" : "three";
}

Orientation parse_orientation(std::string_view token) {
  const auto t = lower(text::trim(token));
  if (t == "n" || t == "north") return Orientation::North;
  if (t == "e" || t == "east") return Orientation::East;
  if (t == "s" || t == "south") return Orientation::South;
  if (t == "w" || t == "west") return Orientation::West;
  fail(ErrorKind::Validation, "unknown orientation '" + std::string(token) + "' (expected N, E, S or W)");
}

Shading parse_shading(std::string_view token) {
  const auto t = lower(text::trim(token));
  if (t == "none" || t == "no" || t == "0") return Shading::None;
  if (t == "louvre" || t == "louver" || t == "1") return Shading::HorizontalLouvre;
  fail(ErrorKind::Validation, "unknown shading '" + std::string(token) + "' (expected none or louvre)");
}

Divisions parse_divisions(std::string_view token) {
  const auto t = lower(text::trim(token));
  if (t == "one" || t == "1") return Divisions::OneFullWidth;
  if (t == "three" || t == "3") return Divisions::ThreeEqual;
  fail(ErrorKind::Validation, "unknown divisions '" + std::string(token) + "' (expected one or three)");
}

double facade_azimuth_deg(Orientation o) { return 90.0 * static_cast<int>(o); }

void validate(const RoomConfig& c) {
  auto bad = [](const std::string& m) { fail(ErrorKind::Validation, "invalid room: " + m); };
  if (!(c.width > 0.0)) bad("width must be > 0");
  if (!(c.depth > 0.0)) bad("depth must be > 0");
  if (!(c.height > 0.0)) bad("height must be > 0");
  if (!(c.reflectance > 0.0 && c.reflectance < 1.0)) bad("reflectance must lie in (0,1)");
  if (!(c.sill_height >= 0.0)) bad("sill_height must be >= 0");
  if (!(c.window_height >= 0.0)) bad("window_height must be >= 0");
  // Table-1 rooms include a head flush with the ceiling (1.1 + 2.4 = 3.5).
  if (c.head_height() > c.height + 1e-12) bad("sill_height + window_height exceeds room height");
  if (!(c.glazing_transmittance > 0.0 && c.glazing_transmittance <= 1.0)) {
    bad("glazing_transmittance must lie in (0,1]");
  }
}

// --- design space ----------------------------------------------------------

std::size_t DesignSpace::cardinality() const {
  return orientations.size() * dimensions.size() * reflectances.size() * shadings.size() *
         sill_heights.size() * window_heights.size() * divisions.size();
}

DesignSpace DesignSpace::table1() {
  DesignSpace s;
  s.orientations = {Orientation::North, Orientation::East, Orientation::South, Orientation::West};
  s.dimensions = {{3.0, 4.0}, {6.0, 7.0}, {8.0, 10.0}};
  s.reflectances = {0.2, 0.4, 0.7};
  s.shadings = {Shading::None, Shading::HorizontalLouvre};
  s.sill_heights = {0.5, 0.7, 0.9, 1.1};
  s.window_heights = {1.2, 1.5, 1.8, 2.1, 2.4};
  s.divisions = {Divisions::OneFullWidth, Divisions::ThreeEqual};
  return s;
}

DesignSpace DesignSpace::table4() {
  DesignSpace s;
  s.orientations = {Orientation::South, Orientation::East};
  s.dimensions = {{7.0, 8.0}, {5.0, 6.0}};
  s.reflectances = {0.3, 0.6};
  s.shadings = {Shading::None, Shading::HorizontalLouvre};
  s.sill_heights = {0.8, 1.0};
  s.window_heights = {1.6, 2.0};
  s.divisions = {Divisions::OneFullWidth};
  return s;
}

DesignSpace DesignSpace::preset(std::string_view name) {
  const auto n = lower(text::trim(name));
  if (n == "table1") return table1();
  if (n == "table4") return table4();
  fail(ErrorKind::Validation, "unknown design-space preset '" + std::string(name) + "'");
}

DesignSpace DesignSpace::parse(std::string_view input) {
  std::map<std::string, std::vector<std::string_view>> entries;
  const std::string owned(input);
  const auto lines = text::split_lines(owned);
  std::vector<std::string> keep;  // backing storage for the views
  keep.reserve(lines.size());
  std::size_t line_no = 0;
  for (const auto& raw : lines) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::Validation, "design space line " + std::to_string(line_no) + ": expected 'name = values'");
    }
    auto key = lower(text::trim(line.substr(0, eq)));
    if (key == "okb" || key == "o.k.b") key = "sill_height";
    keep.emplace_back(text::trim(line.substr(eq + 1)));
    auto values = keep.back().empty() ? std::vector<std::string_view>{} : text::split(keep.back(), ',');
    if (entries.count(key)) fail(ErrorKind::Validation, "design space: duplicate variable '" + key + "'");
    entries.emplace(std::move(key), std::move(values));
  }

  auto take = [&](const std::string& key) -> std::vector<std::string_view> {
    auto it = entries.find(key);
    if (it == entries.end()) fail(ErrorKind::Validation, "design space: missing variable '" + key + "'");
    auto values = std::move(it->second);
    entries.erase(it);
    if (values.empty()) fail(ErrorKind::Validation, "design space: variable '" + key + "' has an empty value list");
    for (auto v : values) {
      if (v.empty()) fail(ErrorKind::Validation, "design space: variable '" + key + "' has an empty entry");
    }
    return values;
  };
  auto numbers = [&](const std::string& key) {
    std::vector<double> out;
    for (auto v : take(key)) out.push_back(text::parse_double(v, "design space '" + key + "'"));
    return out;
  };

  DesignSpace s;
  for (auto v : take("orientation")) s.orientations.push_back(parse_orientation(v));
  for (auto v : take("dimensions")) {
    const auto x = v.find_first_of("xX");
    if (x == std::string_view::npos) {
      fail(ErrorKind::Validation, "design space 'dimensions': expected WIDTHxDEPTH, got '" + std::string(v) + "'");
    }
    s.dimensions.push_back({text::parse_double(v.substr(0, x), "design space 'dimensions'"),
                            text::parse_double(v.substr(x + 1), "design space 'dimensions'")});
  }
  s.reflectances = numbers("reflectance");
  for (auto v : take("shading")) s.shadings.push_back(parse_shading(v));
  s.sill_heights = numbers("sill_height");
  s.window_heights = numbers("window_height");
  for (auto v : take("divisions")) s.divisions.push_back(parse_divisions(v));
  if (entries.count("height")) s.height = numbers("height").at(0);
  if (entries.count("glazing_transmittance")) s.glazing_transmittance = numbers("glazing_transmittance").at(0);
  if (!entries.empty()) {
    fail(ErrorKind::Validation, "design space: unknown variable '" + entries.begin()->first + "'");
  }
  return s;
}

std::string DesignSpace::to_text() const {
  std::ostringstream out;
  auto list = [&](const char* key, const auto& values, auto fmt) {
    out << key << " = ";
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? ", " : "") << fmt(values[i]);
    out << '\n';
  };
  auto num = [](double v) { return text::format_double(v); };
  list("orientation", orientations, [](Orientation o) { return std::string(to_string(o)); });
  list("dimensions", dimensions,
       [&](const RoomDimensions& d) { return num(d.width) + "x" + num(d.depth); });
  list("reflectance", reflectances, num);
  list("shading", shadings, [](Shading v) { return std::string(to_string(v)); });
  list("sill_height", sill_heights, num);
  list("window_height", window_heights, num);
  list("divisions", divisions, [](Divisions v) { return std::string(to_string(v)); });
  out << "height = " << num(height) << '\n';
  out << "glazing_transmittance = " << num(glazing_transmittance) << '\n';
  return out.str();
}

std::vector<RoomConfig> enumerate_design_space(const DesignSpace& s) {
  if (s.orientations.empty() || s.dimensions.empty() || s.reflectances.empty() || s.shadings.empty() ||
      s.sill_heights.empty() || s.window_heights.empty() || s.divisions.empty()) {
    fail(ErrorKind::Validation, "invalid design space: every variable needs at least one value");
  }
  std::vector<RoomConfig> out;
  out.reserve(s.cardinality());
  for (auto o : s.orientations)
    for (const auto& dim : s.dimensions)
      for (auto refl : s.reflectances)
        for (auto shade : s.shadings)
          for (auto sill : s.sill_heights)
            for (auto wh : s.window_heights)
              for (auto div : s.divisions) {
                RoomConfig c;
                c.width = dim.width;
                c.depth = dim.depth;
                c.height = s.height;
                c.orientation = o;
                c.reflectance = refl;
                c.shading = shade;
                c.sill_height = sill;
                c.window_height = wh;
                c.divisions = div;
                c.glazing_transmittance = s.glazing_transmittance;
                validate(c);
                out.push_back(c);
              }
  return out;
}

// --- encoding --------------------------------------------------------------

std::string_view feature_name(std::size_t index) {
  static constexpr std::array<std::string_view, kFeatureCount> kNames = {
      "orientation_n", "orientation_e", "orientation_s", "orientation_w", "width",     "depth",
      "reflectance",   "shading",       "sill_height",   "window_height", "divisions",
  };
  return index < kNames.size() ? kNames[index] : std::string_view{"?"};
}

NormalizationBounds NormalizationBounds::from_space(const DesignSpace& s) {
  if (s.dimensions.empty() || s.reflectances.empty() || s.sill_heights.empty() || s.window_heights.empty()) {
    fail(ErrorKind::Validation, "invalid design space: every variable needs at least one value");
  }
  NormalizationBounds b;
  std::vector<double> widths, depths;
  for (const auto& d : s.dimensions) {
    widths.push_back(d.width);
    depths.push_back(d.depth);
  }
  b.width = range_of(widths);
  b.depth = range_of(depths);
  b.reflectance = range_of(s.reflectances);
  b.sill_height = range_of(s.sill_heights);
  b.window_height = range_of(s.window_heights);
  return b;
}

Encoding encode(const RoomConfig& c, const NormalizationBounds& b) {
  Encoding e;
  auto& f = e.features;
  f[static_cast<std::size_t>(c.orientation)] = 1.0;
  f[feature::kWidth] = scale(c.width, b.width, e.clamped);
  f[feature::kDepth] = scale(c.depth, b.depth, e.clamped);
  f[feature::kReflectance] = scale(c.reflectance, b.reflectance, e.clamped);
  f[feature::kShading] = c.shading == Shading::HorizontalLouvre ? 1.0 : 0.0;
  f[feature::kSill] = scale(c.sill_height, b.sill_height, e.clamped);
  f[feature::kWindowHeight] = scale(c.window_height, b.window_height, e.clamped);
  f[feature::kDivisions] = c.divisions == Divisions::ThreeEqual ? 1.0 : 0.0;
  return e;
}

// --- windows ---------------------------------------------------------------

std::array<Vec3, 4> WindowRect::corners() const {
  return {Vec3{left, 0.0, sill}, Vec3{right(), 0.0, sill}, Vec3{right(), 0.0, top()}, Vec3{left, 0.0, top()}};
}

std::vector<WindowRect> window_rects(const RoomConfig& c) {
  if (c.divisions == Divisions::OneFullWidth) {
    return {WindowRect{0.0, c.sill_height, c.width, c.window_height}};
  }
  // Three windows of W/5 with four equal gaps of W/10 (ends included).
  const double w = c.width / 5.0;
  const double g = c.width / 10.0;
  std::vector<WindowRect> rects;
  for (int i = 0; i < 3; ++i) {
    rects.push_back(WindowRect{g + i * (w + g), c.sill_height, w, c.window_height});
  }
  return rects;
}

double glazed_area(std::span<const WindowRect> rects) {
  double a = 0.0;
  for (const auto& r : rects) a += r.area();
  return a;
}

RoomAxes room_axes(Orientation o) {
  const double az = deg2rad(facade_azimuth_deg(o));
  // x points to the right when looking out (azimuth + 90), y points inward (azimuth + 180).
  return {Vec3{std::cos(az), -std::sin(az), 0.0}, Vec3{-std::sin(az), -std::cos(az), 0.0}};
}

// --- grid ------------------------------------------------------------------

AnalysisGrid build_grid(const RoomConfig& c, const GridParams& p) {
  if (!(p.spacing > 0.0)) fail(ErrorKind::InvalidArgument, "grid spacing must be > 0");
  if (!(p.wall_offset > 0.0)) fail(ErrorKind::InvalidArgument, "grid wall offset must be > 0");
  if (!(p.wall_offset < std::min(c.width, c.depth) / 2.0)) {
    fail(ErrorKind::InvalidArgument, "grid would be empty: wall offset must be < min(width, depth)/2");
  }
  auto count = [&](double dim) {
    return static_cast<std::size_t>(std::floor((dim - 2.0 * p.wall_offset) / p.spacing + 1e-9)) + 1;
  };
  AnalysisGrid g;
  g.columns = count(c.width);
  g.rows = count(c.depth);
  g.spacing = p.spacing;
  g.cell_area = p.spacing * p.spacing;
  g.wall_offset = p.wall_offset;
  g.workplane = p.workplane;
  g.points.reserve(g.columns * g.rows);
  for (std::size_t r = 0; r < g.rows; ++r) {
    for (std::size_t col = 0; col < g.columns; ++col) {
      g.points.push_back(Vec3{p.wall_offset + static_cast<double>(col) * p.spacing,
                              p.wall_offset + static_cast<double>(r) * p.spacing, p.workplane});
    }
  }
  return g;
}

}  // namespace lightbox
