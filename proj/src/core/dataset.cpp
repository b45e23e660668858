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
#include "dataset.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "textio.hpp"

namespace lightbox {

namespace {

constexpr std::string_view kMagic = "lightbox-dataset 1";
constexpr std::string_view kConfigHeader =
    "id,orientation,width,depth,height,reflectance,shading,sill_height,window_height,divisions,glazing_transmittance";
constexpr std::string_view kSvdNote =
    "s_vd is a geometric proxy: area fraction with >= 250 occupied hours of direct sun above 3000 lux";
constexpr std::string_view kIngestEngine = "radiance/daysim ab=5 ad=1500 as=128 ar=16 aa=0.25";

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string range_text(const Range& r) {
  return text::format_double(r.lo) + " " + text::format_double(r.hi);
}

Range parse_range(std::string_view v, std::string_view key) {
  const auto parts = text::split(v, ' ');
  if (parts.size() != 2) fail(ErrorKind::Validation, "dataset metadata '" + std::string(key) + "': expected 'lo hi'");
  return {text::parse_double(parts[0], key), text::parse_double(parts[1], key)};
}

std::string header_for(bool labeled) {
  std::string h(kConfigHeader);
  if (labeled) {
    for (auto name : kMetricNames) {
      h += ',';
      h += name;
    }
  }
  return h;
}

Provenance parse_provenance(std::string_view v) {
  if (v == "proxy-oracle") return Provenance::ProxyOracle;
  if (v == "ingested") return Provenance::Ingested;
  if (v == "unlabeled") return Provenance::Unlabeled;
  fail(ErrorKind::Validation, "dataset: unknown provenance '" + std::string(v) + "'");
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::ProxyOracle: return "proxy-oracle";
    case Provenance::Ingested: return "ingested";
    case Provenance::Unlabeled: return "unlabeled";
  }
  return "?";
}

Dataset make_config_set(const DesignSpace& space, std::string source) {
  Dataset ds;
  ds.meta.bounds = NormalizationBounds::from_space(space);
  ds.meta.source = std::move(source);
  const auto configs = enumerate_design_space(space);
  ds.rows.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) ds.rows.push_back({i, configs[i], {}});
  return ds;
}

std::string format_dataset(const Dataset& ds) {
  std::ostringstream out;
  const auto& m = ds.meta;
  out << "# " << kMagic << '\n';
  out << "# provenance: " << to_string(m.provenance) << '\n';
  out << "# seed: " << m.seed << '\n';
  out << "# source: " << m.source << '\n';
  out << "# grid_spacing: " << text::format_double(m.grid.spacing) << '\n';
  out << "# grid_workplane: " << text::format_double(m.grid.workplane) << '\n';
  out << "# grid_wall_offset: " << text::format_double(m.grid.wall_offset) << '\n';
  out << "# bounds_width: " << range_text(m.bounds.width) << '\n';
  out << "# bounds_depth: " << range_text(m.bounds.depth) << '\n';
  out << "# bounds_reflectance: " << range_text(m.bounds.reflectance) << '\n';
  out << "# bounds_sill_height: " << range_text(m.bounds.sill_height) << '\n';
  out << "# bounds_window_height: " << range_text(m.bounds.window_height) << '\n';
  for (const auto& [k, v] : m.extra) out << "# " << k << ": " << v << '\n';
  out << header_for(ds.labeled()) << '\n';
  for (const auto& r : ds.rows) {
    const auto& c = r.config;
    out << r.id << ',' << to_string(c.orientation) << ',' << text::format_double(c.width) << ','
        << text::format_double(c.depth) << ',' << text::format_double(c.height) << ','
        << text::format_double(c.reflectance) << ',' << to_string(c.shading) << ','
        << text::format_double(c.sill_height) << ',' << text::format_double(c.window_height) << ','
        << to_string(c.divisions) << ',' << text::format_double(c.glazing_transmittance);
    if (ds.labeled()) {
      for (double v : r.metrics) out << ',' << text::format_double(v);
    }
    out << '\n';
  }
  return out.str();
}

Dataset parse_dataset(std::string_view input) {
  Dataset ds;
  const auto lines = text::split_lines(input);
  bool magic = false;
  bool have_header = false;
  bool labeled = false;
  std::set<std::size_t> ids;
  std::size_t line_no = 0;
  for (const auto& raw : lines) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    const std::string where = "dataset line " + std::to_string(line_no);
    if (line.front() == '#') {
      const auto body = text::trim(line.substr(1));
      if (body == kMagic) {
        magic = true;
        continue;
      }
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string key(text::trim(body.substr(0, colon)));
      const auto value = text::trim(body.substr(colon + 1));
      auto& m = ds.meta;
      if (key == "provenance") m.provenance = parse_provenance(value);
      else if (key == "seed") m.seed = static_cast<std::uint64_t>(text::parse_int(value, where));
      else if (key == "source") m.source = std::string(value);
      else if (key == "grid_spacing") m.grid.spacing = text::parse_double(value, where);
      else if (key == "grid_workplane") m.grid.workplane = text::parse_double(value, where);
      else if (key == "grid_wall_offset") m.grid.wall_offset = text::parse_double(value, where);
      else if (key == "bounds_width") m.bounds.width = parse_range(value, key);
      else if (key == "bounds_depth") m.bounds.depth = parse_range(value, key);
      else if (key == "bounds_reflectance") m.bounds.reflectance = parse_range(value, key);
      else if (key == "bounds_sill_height") m.bounds.sill_height = parse_range(value, key);
      else if (key == "bounds_window_height") m.bounds.window_height = parse_range(value, key);
      else m.extra.emplace_back(key, std::string(value));
      continue;
    }
    if (!have_header) {
      if (line == header_for(true)) labeled = true;
      else if (line != header_for(false)) fail(ErrorKind::Validation, where + ": unexpected column header");
      have_header = true;
      continue;
    }
    const auto cols = text::split(line, ',');
    const std::size_t expected = labeled ? 11 + kMetricCount : 11;
    if (cols.size() != expected) {
      fail(ErrorKind::Validation, where + ": expected " + std::to_string(expected) + " columns, got " +
                                      std::to_string(cols.size()));
    }
    DatasetRow row;
    const auto id = text::parse_int(cols[0], where);
    if (id < 0) fail(ErrorKind::Validation, where + ": negative id");
    row.id = static_cast<std::size_t>(id);
    if (!ids.insert(row.id).second) fail(ErrorKind::Validation, where + ": duplicate id " + std::to_string(id));
    auto& c = row.config;
    c.orientation = parse_orientation(cols[1]);
    c.width = text::parse_double(cols[2], where);
    c.depth = text::parse_double(cols[3], where);
    c.height = text::parse_double(cols[4], where);
    c.reflectance = text::parse_double(cols[5], where);
    c.shading = parse_shading(cols[6]);
    c.sill_height = text::parse_double(cols[7], where);
    c.window_height = text::parse_double(cols[8], where);
    c.divisions = parse_divisions(cols[9]);
    c.glazing_transmittance = text::parse_double(cols[10], where);
    validate(c);
    if (labeled) {
      for (std::size_t k = 0; k < kMetricCount; ++k) row.metrics[k] = text::parse_double(cols[11 + k], where);
      if (!in_unit_interval(row.metrics)) fail(ErrorKind::Validation, where + ": metric outside [0,1]");
    }
    ds.rows.push_back(row);
  }
  if (!magic) fail(ErrorKind::Validation, "not a lightbox dataset (missing '# " + std::string(kMagic) + "')");
  if (!have_header) fail(ErrorKind::Validation, "dataset has no column header");
  if (labeled && ds.meta.provenance == Provenance::Unlabeled) {
    fail(ErrorKind::Validation, "dataset has metric columns but provenance 'unlabeled'");
  }
  if (!labeled && ds.meta.provenance != Provenance::Unlabeled) {
    fail(ErrorKind::Validation, "dataset provenance says labeled but metric columns are missing");
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) { text::write_file(path, format_dataset(ds)); }

Dataset load_dataset(const std::string& path) { return parse_dataset(text::read_file(path)); }

MetricVector view_components(const RoomConfig& config, const GridParams& grid, const ViewSettings& views) {
  const auto g = build_grid(config, grid);
  const auto v = evaluate_views(config, g, views);
  MetricVector m{};
  m[index(Metric::ViewRange)] = v.view_range_fraction;
  m[index(Metric::ViewDepth)] = v.view_depth_fraction;
  m[index(Metric::ViewFactor)] = v.view_factor_fraction;
  return m;
}

MetricVector proxy_label(const RoomConfig& config, const PseudoClimate& climate, const LabelOptions& o) {
  const auto g = build_grid(config, o.grid);
  MetricVector m = view_components(config, o.grid, o.views);
  const auto d = annual_metrics(config, g, climate, o.daylight);
  m[index(Metric::Udi)] = d.udi;
  m[index(Metric::MeanDa)] = d.m_da;
  m[index(Metric::SpatialDa)] = d.s_da;
  m[index(Metric::Ase)] = d.ase;
  m[index(Metric::Svd)] = d.s_vd;
  return m;
}

Dataset label_proxy(const Dataset& configs, const LabelOptions& o) {
  Dataset out = configs;
  out.meta.provenance = Provenance::ProxyOracle;
  out.meta.seed = o.seed;
  out.meta.grid = o.grid;
  out.meta.extra.clear();
  out.meta.extra.emplace_back("oracle", "analytic daylight proxy (not Radiance-equivalent)");
  out.meta.extra.emplace_back("note.s_vd", std::string(kSvdNote));
  const auto climate = PseudoClimate::generate(o.location, o.seed, o.daylight);
  parallel_for(out.rows.size(), o.threads,
               [&](std::size_t i) { out.rows[i].metrics = proxy_label(out.rows[i].config, climate, o); });
  return out;
}

Dataset label_ingest(const Dataset& configs, std::string_view label_text, const LabelOptions& o) {
  const auto lines = text::split_lines(label_text);
  std::string expected_header = "id";
  for (auto n : kMetricNames) expected_header += "," + std::string(n);

  std::map<std::size_t, MetricVector> labels;
  std::vector<std::pair<std::string, std::string>> meta;
  bool have_header = false;
  std::size_t line_no = 0;
  for (const auto& raw : lines) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    const std::string where = "label file line " + std::to_string(line_no);
    if (line.front() == '#') {
      const auto body = text::trim(line.substr(1));
      if (const auto colon = body.find(':'); colon != std::string_view::npos) {
        meta.emplace_back(std::string(text::trim(body.substr(0, colon))),
                          std::string(text::trim(body.substr(colon + 1))));
      }
      continue;
    }
    if (!have_header) {
      std::string normalized;
      for (auto col : text::split(line, ',')) normalized += (normalized.empty() ? "" : ",") + std::string(col);
      if (normalized != expected_header) {
        fail(ErrorKind::Validation, where + ": header must be '" + expected_header + "'");
      }
      have_header = true;
      continue;
    }
    const auto cols = text::split(line, ',');
    if (cols.size() != 1 + kMetricCount) {
      fail(ErrorKind::Validation, where + ": expected " + std::to_string(1 + kMetricCount) + " columns");
    }
    const auto id = text::parse_int(cols[0], where);
    if (id < 0) fail(ErrorKind::Validation, where + ": negative id");
    MetricVector m{};
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      m[k] = text::parse_double(cols[1 + k], where);
      if (!(m[k] >= 0.0 && m[k] <= 1.0)) {
        fail(ErrorKind::Validation, where + ": rejected row for id " + std::to_string(id) + ": " +
                                        std::string(metric_name(k)) + " = " + text::format_double(m[k]) +
                                        " outside [0,1]");
      }
    }
    if (!labels.emplace(static_cast<std::size_t>(id), m).second) {
      fail(ErrorKind::Validation, where + ": duplicate id " + std::to_string(id));
    }
  }
  if (!have_header) fail(ErrorKind::Validation, "label file: missing header row");

  std::vector<std::size_t> missing;
  std::set<std::size_t> known;
  for (const auto& r : configs.rows) {
    known.insert(r.id);
    if (!labels.count(r.id)) missing.push_back(r.id);
  }
  std::vector<std::size_t> unknown;
  for (const auto& [id, _] : labels) {
    if (!known.count(id)) unknown.push_back(id);
  }
  auto list = [](const std::vector<std::size_t>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size() && i < 20; ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
    if (ids.size() > 20) s += ", ... (" + std::to_string(ids.size()) + " total)";
    return s;
  };
  if (!missing.empty()) fail(ErrorKind::Validation, "label file is missing configs: " + list(missing));
  if (!unknown.empty()) fail(ErrorKind::Validation, "label file has unknown config ids: " + list(unknown));

  Dataset out = configs;
  out.meta.provenance = Provenance::Ingested;
  out.meta.seed = o.seed;
  out.meta.grid = o.grid;
  out.meta.extra.clear();
  bool have_engine = false;
  for (const auto& kv : meta) {
    have_engine = have_engine || kv.first == "engine";
    out.meta.extra.push_back(kv);
  }
  if (!have_engine) out.meta.extra.emplace_back("engine", std::string(kIngestEngine));
  parallel_for(out.rows.size(), o.threads, [&](std::size_t i) {
    auto& row = out.rows[i];
    const auto views = view_components(row.config, o.grid, o.views);
    row.metrics = labels.at(row.id);
    for (auto m : {Metric::ViewRange, Metric::ViewDepth, Metric::ViewFactor}) row.metrics[index(m)] = views[index(m)];
  });
  return out;
}

Dataset select_rows(const Dataset& ds, const std::vector<std::size_t>& positions) {
  Dataset out;
  out.meta = ds.meta;
  out.rows.reserve(positions.size());
  for (auto p : positions) {
    if (p >= ds.rows.size()) fail(ErrorKind::OutOfRange, "row position out of range");
    out.rows.push_back(ds.rows[p]);
  }
  return out;
}

}  // namespace lightbox
