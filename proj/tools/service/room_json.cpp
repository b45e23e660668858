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
#include "room_json.hpp"

#include <array>
#include <cmath>

namespace lightbox::tools {

namespace {

constexpr std::array<const char*, 4> kOrientations = {"N", "E", "S", "W"};
constexpr std::array<const char*, 2> kShadings = {"none", "louvre"};
constexpr std::array<const char*, 2> kDivisions = {"one", "three"};

constexpr std::array<const char*, 8> kRequired = {"width",       "depth",         "orientation", "reflectance",
                                                  "sill_height", "window_height", "shading",     "divisions"};

template <std::size_t N>
bool read_token(const nlohmann::json& v, const std::array<const char*, N>& tokens, int& out) {
  if (!v.is_string()) return false;
  const auto s = v.get<std::string>();
  for (std::size_t i = 0; i < N; ++i) {
    if (s == tokens[i]) {
      out = static_cast<int>(i);
      return true;
    }
  }
  return false;
}

template <std::size_t N>
std::string choices(const std::array<const char*, N>& tokens) {
  std::string s;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) s += ", ";
    s += tokens[i];
  }
  return s;
}

}  // namespace

const char* orientation_token(int o) { return o >= 0 && o < 4 ? kOrientations[o] : "?"; }
const char* shading_token(int s) { return s >= 0 && s < 2 ? kShadings[s] : "?"; }
const char* divisions_token(int d) { return d >= 0 && d < 2 ? kDivisions[d] : "?"; }

bool room_from_json(const nlohmann::json& body, const lbx_room_config& base, lbx_room_config& out,
                    FieldError& error) {
  if (!body.is_object()) {
    error = {"", "request body must be a JSON object"};
    return false;
  }
  for (const char* f : kRequired) {
    if (!body.contains(f)) {
      error = {f, std::string("missing required field '") + f + "'"};
      return false;
    }
  }
  out = base;
  for (const auto& [key, v] : body.items()) {
    double* num = nullptr;
    if (key == "width") num = &out.width;
    else if (key == "depth") num = &out.depth;
    else if (key == "height") num = &out.height;
    else if (key == "reflectance") num = &out.reflectance;
    else if (key == "sill_height") num = &out.sill_height;
    else if (key == "window_height") num = &out.window_height;
    else if (key == "glazing_transmittance") num = &out.glazing_transmittance;

    if (num) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        error = {key, "field '" + key + "' must be a finite number"};
        return false;
      }
      *num = v.get<double>();
    } else if (key == "orientation") {
      if (!read_token(v, kOrientations, out.orientation)) {
        error = {key, "field 'orientation' must be one of " + choices(kOrientations)};
        return false;
      }
    } else if (key == "shading") {
      if (!read_token(v, kShadings, out.shading)) {
        error = {key, "field 'shading' must be one of " + choices(kShadings)};
        return false;
      }
    } else if (key == "divisions") {
      if (!read_token(v, kDivisions, out.divisions)) {
        error = {key, "field 'divisions' must be one of " + choices(kDivisions)};
        return false;
      }
    } else {
      error = {key, "unknown field '" + key + "'"};
      return false;
    }
  }
  return true;
}

bool room_out_of_bounds(const lbx_room_config& room, const lbx_bounds& b, BoundError& error) {
  const std::array<std::tuple<const char*, double, lbx_range>, 5> fields = {{
      {"width", room.width, b.width},
      {"depth", room.depth, b.depth},
      {"reflectance", room.reflectance, b.reflectance},
      {"sill_height", room.sill_height, b.sill_height},
      {"window_height", room.window_height, b.window_height},
  }};
  for (const auto& [name, value, range] : fields) {
    if (value < range.lo || value > range.hi) {
      error = {name, value, range.lo, range.hi};
      return true;
    }
  }
  return false;
}

nlohmann::json room_to_json(const lbx_room_config& r) {
  return {
      {"width", r.width},
      {"depth", r.depth},
      {"height", r.height},
      {"orientation", orientation_token(r.orientation)},
      {"reflectance", r.reflectance},
      {"shading", shading_token(r.shading)},
      {"sill_height", r.sill_height},
      {"window_height", r.window_height},
      {"divisions", divisions_token(r.divisions)},
      {"glazing_transmittance", r.glazing_transmittance},
  };
}

}  // namespace lightbox::tools
