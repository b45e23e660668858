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
#include <filesystem>
#include <map>
#include <string>

#include "lightbox/lightbox.h"

namespace lightbox::tools {

/// A design space named by preset or by file.
struct SpaceSource {
  std::string preset;
  std::filesystem::path file;
  bool empty() const { return preset.empty() && file.empty(); }
};

/// Everything a reproducible end-to-end run depends on.
struct RunManifest {
  std::uint64_t seed = 42;
  SpaceSource space{"table1", {}};
  SpaceSource validation{"table4", {}};
  lbx_grid_params grid{};
  int oracle = LBX_ORACLE_PROXY;
  std::filesystem::path labels;             // ingest mode, training space
  std::filesystem::path validation_labels;  // ingest mode, validation space
  lbx_train_config train{};
  std::size_t explain_samples = 50;
  std::size_t explain_background = 100;
  unsigned threads = 0;
  std::filesystem::path output_dir = "run";
};

/// Parses the JSON manifest. Relative paths resolve against `base_dir`.
/// Throws ApiError(LBX_ERR_VALIDATION) on bad content.
RunManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base_dir);
RunManifest load_manifest(const std::filesystem::path& path);

struct RunResult {
  std::map<std::string, std::filesystem::path> artifacts;
  std::map<std::string, std::string> digests;
  lbx_eval_summary holdout{};
  lbx_eval_summary validation{};
  bool has_validation = false;
};

/// generate -> label -> train -> validate -> explain, then writes
/// digests.json next to the artifacts.
RunResult run_pipeline(const RunManifest& manifest);

}  // namespace lightbox::tools
