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
#include "manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "handles.hpp"
#include "json.hpp"

namespace lightbox::tools {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) { throw ApiError(LBX_ERR_VALIDATION, "manifest: " + message); }

template <typename T>
T get(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("field '") + key + "' has the wrong type");
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

SpaceSource read_space(const json& v, const fs::path& base, const char* key) {
  if (v.is_string()) return {v.get<std::string>(), {}};
  if (!v.is_object()) bad(std::string("'") + key + "' must be a preset name or an object");
  SpaceSource s;
  s.preset = get<std::string>(v, "preset", "");
  s.file = resolve(base, get<std::string>(v, "file", ""));
  if (s.preset.empty() == s.file.empty()) bad(std::string("'") + key + "' needs exactly one of preset or file");
  return s;
}

SpacePtr open_space(const SpaceSource& s) { return s.file.empty() ? load_preset(s.preset) : load_space(s.file); }

std::string source_name(const SpaceSource& s) { return s.file.empty() ? s.preset : s.file.filename().string(); }

DatasetPtr label(const lbx_dataset* configs, const RunManifest& m, const fs::path& labels) {
  lbx_label_options o;
  lbx_label_defaults(&o);
  o.oracle = m.oracle;
  o.seed = m.seed;
  o.grid = m.grid;
  o.threads = m.threads;
  const auto labels_str = labels.string();
  o.labels_path = labels.empty() ? nullptr : labels_str.c_str();
  lbx_dataset* out = nullptr;
  check(lbx_dataset_label(configs, &o, &out));
  return DatasetPtr(out);
}

}  // namespace

RunManifest parse_manifest(const std::string& text, const fs::path& base) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) bad("not a JSON object");
  for (const auto& [key, _] : doc.items()) {
    static const char* known[] = {"seed", "design_space", "validation_space", "grid", "oracle",
                                  "train", "explain", "threads", "artifacts"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) bad("unknown field '" + key + "'");
  }
  RunManifest m;
  lbx_grid_defaults(&m.grid);
  lbx_train_defaults(&m.train);
  m.seed = get<std::uint64_t>(doc, "seed", m.seed);
  m.train.seed = m.seed;
  if (doc.contains("design_space")) m.space = read_space(doc["design_space"], base, "design_space");
  if (doc.contains("validation_space")) {
    if (doc["validation_space"].is_null()) m.validation = {};
    else m.validation = read_space(doc["validation_space"], base, "validation_space");
  }
  if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    m.grid.spacing = get<double>(g, "spacing", m.grid.spacing);
    m.grid.workplane = get<double>(g, "workplane", m.grid.workplane);
    m.grid.wall_offset = get<double>(g, "wall_offset", m.grid.wall_offset);
  }
  if (doc.contains("oracle")) {
    const auto& o = doc["oracle"];
    const auto mode = o.is_string() ? o.get<std::string>() : get<std::string>(o, "mode", "proxy");
    if (mode == "proxy") m.oracle = LBX_ORACLE_PROXY;
    else if (mode == "ingest") m.oracle = LBX_ORACLE_INGEST;
    else bad("oracle mode must be proxy or ingest");
    if (o.is_object()) {
      m.labels = resolve(base, get<std::string>(o, "labels", ""));
      m.validation_labels = resolve(base, get<std::string>(o, "validation_labels", ""));
    }
    if (m.oracle == LBX_ORACLE_INGEST && m.labels.empty()) bad("ingest mode needs oracle.labels");
    if (m.oracle == LBX_ORACLE_INGEST && !m.validation.empty() && m.validation_labels.empty()) {
      bad("ingest mode with a validation space needs oracle.validation_labels");
    }
  }
  if (doc.contains("train")) {
    const auto& t = doc["train"];
    m.train.epochs = get<std::size_t>(t, "epochs", m.train.epochs);
    m.train.batch_size = get<std::size_t>(t, "batch_size", m.train.batch_size);
    m.train.hidden = get<std::size_t>(t, "neurons", m.train.hidden);
    m.train.learning_rate = get<double>(t, "learning_rate", m.train.learning_rate);
    m.train.momentum = get<double>(t, "momentum", m.train.momentum);
    m.train.train_fraction = get<double>(t, "train_fraction", m.train.train_fraction);
    m.train.seed = get<std::uint64_t>(t, "seed", m.train.seed);
    const auto opt = get<std::string>(t, "optimizer", m.train.optimizer == LBX_OPT_ADAM ? "adam" : "sgd");
    if (opt == "sgd") m.train.optimizer = LBX_OPT_SGD_MOMENTUM;
    else if (opt == "adam") m.train.optimizer = LBX_OPT_ADAM;
    else bad("train.optimizer must be sgd or adam");
  }
  if (doc.contains("explain")) {
    m.explain_samples = get<std::size_t>(doc["explain"], "samples", m.explain_samples);
    m.explain_background = get<std::size_t>(doc["explain"], "background", m.explain_background);
  }
  m.threads = get<unsigned>(doc, "threads", m.threads);
  if (doc.contains("artifacts")) {
    const auto& a = doc["artifacts"];
    m.output_dir = resolve(base, a.is_string() ? a.get<std::string>() : get<std::string>(a, "dir", "run"));
  } else {
    m.output_dir = base / "run";
  }
  return m;
}

RunManifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(LBX_ERR_IO, "cannot read manifest '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

RunResult run_pipeline(const RunManifest& m) {
  std::error_code ec;
  fs::create_directories(m.output_dir, ec);
  if (ec) throw ApiError(LBX_ERR_IO, "cannot create '" + m.output_dir.string() + "': " + ec.message());

  RunResult r;
  auto path = [&](const std::string& key, const char* file) {
    const auto p = m.output_dir / file;
    r.artifacts[key] = p;
    return p.string();
  };

  auto space = open_space(m.space);
  auto configs = configs_of(space.get(), source_name(m.space));
  check(lbx_dataset_save(configs.get(), path("configs", "configs.csv").c_str()));
  auto labeled = label(configs.get(), m, m.labels);
  check(lbx_dataset_save(labeled.get(), path("dataset", "dataset.csv").c_str()));

  lbx_model* raw_model = nullptr;
  lbx_eval* raw_eval = nullptr;
  check(lbx_model_train(labeled.get(), &m.train, &raw_model, &raw_eval));
  ModelPtr model(raw_model);
  EvalPtr holdout(raw_eval);
  check(lbx_model_save(model.get(), path("model", "model.txt").c_str()));
  check(lbx_eval_write(holdout.get(), path("report", "holdout_report.csv").c_str()));
  check(lbx_eval_summary_get(holdout.get(), &r.holdout));

  DatasetPtr explain_pool;
  if (!m.validation.empty()) {
    auto vspace = open_space(m.validation);
    auto vconfigs = configs_of(vspace.get(), source_name(m.validation));
    auto vlabeled = label(vconfigs.get(), m, m.validation_labels);
    check(lbx_dataset_save(vlabeled.get(), path("validation_dataset", "validation_dataset.csv").c_str()));
    lbx_eval* v = nullptr;
    check(lbx_model_validate(model.get(), vlabeled.get(), &v));
    EvalPtr veval(v);
    check(lbx_eval_write(veval.get(), path("validation_report", "validation_report.csv").c_str()));
    check(lbx_eval_summary_get(veval.get(), &r.validation));
    r.has_validation = true;
  }

  if (m.explain_samples > 0) {
    lbx_dataset *samples = nullptr, *background = nullptr;
    check(lbx_dataset_sample(labeled.get(), m.explain_samples, m.seed + 1, &samples));
    DatasetPtr s(samples);
    check(lbx_dataset_sample(labeled.get(), m.explain_background, m.seed + 2, &background));
    DatasetPtr b(background);
    lbx_shap* shap = nullptr;
    check(lbx_explain(model.get(), s.get(), b.get(), 0, &shap));
    ShapPtr sp(shap);
    check(lbx_shap_write_summary(sp.get(), path("shap_summary", "shap_summary.csv").c_str()));
    check(lbx_shap_write_scatter(sp.get(), path("shap_scatter", "shap_scatter.csv").c_str()));
  }

  json digests = json::object();
  for (const auto& [key, p] : r.artifacts) {
    r.digests[key] = file_digest(p.string());
    digests[key] = r.digests[key];
  }
  const auto digest_path = m.output_dir / "digests.json";
  std::ofstream out(digest_path, std::ios::binary | std::ios::trunc);
  out << digests.dump(2) << '\n';
  if (!out) throw ApiError(LBX_ERR_IO, "cannot write '" + digest_path.string() + "'");
  r.artifacts["digests"] = digest_path;
  return r;
}

}  // namespace lightbox::tools
