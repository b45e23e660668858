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

#include <string>

#include "json.hpp"
#include "lightbox/lightbox.h"

namespace lightbox::tools {

/// Malformed request: wrong type, unknown token or missing field.
struct FieldError {
  std::string field;
  std::string message;
};

/// Value outside the accepted interval.
struct BoundError {
  std::string field;
  double value = 0.0;
  double min = 0.0;
  double max = 0.0;
};

const char* orientation_token(int orientation);
const char* shading_token(int shading);
const char* divisions_token(int divisions);

/// Reads a room from JSON. Fields left out keep the values in `base`
/// unless they are listed as required. Returns false and fills `error`
/// on a malformed body.
bool room_from_json(const nlohmann::json& body, const lbx_room_config& base, lbx_room_config& out,
                    FieldError& error);

/// First continuous field outside `bounds`, if any.
bool room_out_of_bounds(const lbx_room_config& room, const lbx_bounds& bounds, BoundError& error);

nlohmann::json room_to_json(const lbx_room_config& room);

}  // namespace lightbox::tools
