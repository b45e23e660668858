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

#include <memory>
#include <stdexcept>
#include <string>

#include "lightbox/lightbox.h"

namespace lightbox::tools {

/// Failure reported by the C API, carrying its status code.
class ApiError : public std::runtime_error {
 public:
  ApiError(lbx_status status, const std::string& message) : std::runtime_error(message), status_(status) {}
  lbx_status status() const { return status_; }

 private:
  lbx_status status_;
};

inline void check(lbx_status status) {
  if (status != LBX_OK) throw ApiError(status, lbx_last_error());
}

struct SpaceDeleter {
  void operator()(lbx_space* p) const { lbx_space_free(p); }
};
struct DatasetDeleter {
  void operator()(lbx_dataset* p) const { lbx_dataset_free(p); }
};
struct ModelDeleter {
  void operator()(lbx_model* p) const { lbx_model_free(p); }
};
struct EvalDeleter {
  void operator()(lbx_eval* p) const { lbx_eval_free(p); }
};
struct ShapDeleter {
  void operator()(lbx_shap* p) const { lbx_shap_free(p); }
};

using SpacePtr = std::unique_ptr<lbx_space, SpaceDeleter>;
using DatasetPtr = std::unique_ptr<lbx_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<lbx_model, ModelDeleter>;
using EvalPtr = std::unique_ptr<lbx_eval, EvalDeleter>;
using ShapPtr = std::unique_ptr<lbx_shap, ShapDeleter>;

inline SpacePtr load_preset(const std::string& name) {
  lbx_space* s = nullptr;
  check(lbx_space_preset(name.c_str(), &s));
  return SpacePtr(s);
}

inline SpacePtr load_space(const std::string& path) {
  lbx_space* s = nullptr;
  check(lbx_space_load(path.c_str(), &s));
  return SpacePtr(s);
}

inline DatasetPtr load_dataset(const std::string& path) {
  lbx_dataset* d = nullptr;
  check(lbx_dataset_load(path.c_str(), &d));
  return DatasetPtr(d);
}

inline ModelPtr load_model(const std::string& path) {
  lbx_model* m = nullptr;
  check(lbx_model_load(path.c_str(), &m));
  return ModelPtr(m);
}

inline DatasetPtr configs_of(const lbx_space* space, const std::string& source) {
  lbx_dataset* d = nullptr;
  check(lbx_dataset_from_space(space, source.c_str(), &d));
  return DatasetPtr(d);
}

inline std::string model_digest(const lbx_model* model) {
  char buf[LBX_DIGEST_SIZE];
  check(lbx_model_digest(model, buf));
  return buf;
}

inline std::string file_digest(const std::string& path) {
  char buf[LBX_DIGEST_SIZE];
  check(lbx_file_digest(path.c_str(), buf));
  return buf;
}

}  // namespace lightbox::tools
