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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "daylight.hpp"
#include "metrics.hpp"
#include "scene.hpp"
#include "views.hpp"

namespace lightbox {

enum class Provenance { Unlabeled, ProxyOracle, Ingested };

std::string_view to_string(Provenance p);

struct DatasetMetadata {
  Provenance provenance = Provenance::Unlabeled;
  std::uint64_t seed = 0;
  GridParams grid;
  NormalizationBounds bounds;
  std::string source;
  std::vector<std::pair<std::string, std::string>> extra;  // opaque key/value metadata
};

struct DatasetRow {
  std::size_t id = 0;  // enumeration index in the source design space
  RoomConfig config;
  MetricVector metrics{};
};

struct Dataset {
  DatasetMetadata meta;
  std::vector<DatasetRow> rows;

  bool labeled() const { return meta.provenance != Provenance::Unlabeled; }
  std::size_t size() const { return rows.size(); }
};

/// Unlabeled rows for every configuration of @p space, ids in enumeration order.
Dataset make_config_set(const DesignSpace& space, std::string source);

std::string format_dataset(const Dataset& dataset);
Dataset parse_dataset(std::string_view text);
void save_dataset(const Dataset& dataset, const std::string& path);
Dataset load_dataset(const std::string& path);

struct LabelOptions {
  GridParams grid;
  std::uint64_t seed = 42;
  Location location = Location::tehran();
  DaylightSettings daylight;
  ViewSettings views;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Geometric view fractions for one room, in MetricVector slots; the
/// daylight slots are left at zero.
MetricVector view_components(const RoomConfig& config, const GridParams& grid, const ViewSettings& views = {});

MetricVector proxy_label(const RoomConfig& config, const PseudoClimate& climate, const LabelOptions& options);

/// Proxy-oracle labels for every row (row order preserved).
Dataset label_proxy(const Dataset& configs, const LabelOptions& options);

/// Labels from an external file ("id" plus the eight metric columns, header
/// required). Daylight/glare components come from the file; view components
/// are recomputed geometrically.
Dataset label_ingest(const Dataset& configs, std::string_view label_text, const LabelOptions& options);

/// Subset of rows, selected by position.
Dataset select_rows(const Dataset& dataset, const std::vector<std::size_t>& positions);

}  // namespace lightbox
