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
#include "lightbox/lightbox.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "ann.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "model.hpp"
#include "scene.hpp"
#include "shap.hpp"
#include "textio.hpp"
#include "views.hpp"

struct lbx_space {
  lightbox::DesignSpace space;
  std::vector<lightbox::RoomConfig> configs;
};

struct lbx_dataset {
  lightbox::Dataset data;
};

struct lbx_model {
  lightbox::SurrogateModel model;
};

struct lbx_eval {
  lightbox::EvalReport report;
};

struct lbx_shap {
  lightbox::shap::Summary summary;
};

namespace {

using namespace lightbox;

thread_local std::string g_last_error;

lbx_status to_status(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return LBX_ERR_INVALID_ARGUMENT;
    case ErrorKind::Validation: return LBX_ERR_VALIDATION;
    case ErrorKind::OutOfRange: return LBX_ERR_OUT_OF_RANGE;
    case ErrorKind::Io: return LBX_ERR_IO;
  }
  return LBX_ERR_INTERNAL;
}

template <typename Fn>
lbx_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return LBX_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return LBX_ERR_INTERNAL;
}

template <typename T>
void require(const T* p, const char* what) {
  if (!p) fail(ErrorKind::InvalidArgument, std::string(what) + " must not be NULL");
}

RoomConfig from_c(const lbx_room_config& c) {
  if (c.orientation < 0 || c.orientation > 3) fail(ErrorKind::Validation, "orientation must be 0..3");
  if (c.shading < 0 || c.shading > 1) fail(ErrorKind::Validation, "shading must be 0 or 1");
  if (c.divisions < 0 || c.divisions > 1) fail(ErrorKind::Validation, "divisions must be 0 or 1");
  RoomConfig r;
  r.width = c.width;
  r.depth = c.depth;
  r.height = c.height;
  r.orientation = static_cast<Orientation>(c.orientation);
  r.reflectance = c.reflectance;
  r.shading = static_cast<Shading>(c.shading);
  r.sill_height = c.sill_height;
  r.window_height = c.window_height;
  r.divisions = static_cast<Divisions>(c.divisions);
  r.glazing_transmittance = c.glazing_transmittance;
  validate(r);
  return r;
}

lbx_room_config to_c(const RoomConfig& r) {
  lbx_room_config c{};
  c.width = r.width;
  c.depth = r.depth;
  c.height = r.height;
  c.orientation = static_cast<int>(r.orientation);
  c.reflectance = r.reflectance;
  c.shading = static_cast<int>(r.shading);
  c.sill_height = r.sill_height;
  c.window_height = r.window_height;
  c.divisions = static_cast<int>(r.divisions);
  c.glazing_transmittance = r.glazing_transmittance;
  return c;
}

GridParams from_c(const lbx_grid_params* g) {
  if (!g) return {};
  return {g->spacing, g->workplane, g->wall_offset};
}

lbx_grid_params to_c(const GridParams& g) { return {g.spacing, g.workplane, g.wall_offset}; }

lbx_bounds to_c(const NormalizationBounds& b) {
  auto r = [](const Range& x) { return lbx_range{x.lo, x.hi}; };
  return {r(b.width), r(b.depth), r(b.reflectance), r(b.sill_height), r(b.window_height)};
}

ann::TrainConfig from_c(const lbx_train_config& c) {
  ann::TrainConfig t;
  t.epochs = c.epochs;
  t.batch_size = c.batch_size;
  t.hidden = c.hidden;
  t.learning_rate = c.learning_rate;
  t.momentum = c.momentum;
  if (c.optimizer != LBX_OPT_SGD_MOMENTUM && c.optimizer != LBX_OPT_ADAM) {
    fail(ErrorKind::Validation, "unknown optimizer");
  }
  t.optimizer = c.optimizer == LBX_OPT_ADAM ? ann::Optimizer::Adam : ann::Optimizer::SgdMomentum;
  t.seed = c.seed;
  t.train_fraction = c.train_fraction;
  t.check();
  return t;
}

lbx_train_config to_c(const ann::TrainConfig& t) {
  lbx_train_config c{};
  c.epochs = t.epochs;
  c.batch_size = t.batch_size;
  c.hidden = t.hidden;
  c.learning_rate = t.learning_rate;
  c.momentum = t.momentum;
  c.optimizer = t.optimizer == ann::Optimizer::Adam ? LBX_OPT_ADAM : LBX_OPT_SGD_MOMENTUM;
  c.seed = t.seed;
  c.train_fraction = t.train_fraction;
  return c;
}

void copy_digest(const std::string& hex, char out[LBX_DIGEST_SIZE]) {
  std::memset(out, 0, LBX_DIGEST_SIZE);
  std::memcpy(out, hex.data(), std::min<std::size_t>(hex.size(), LBX_DIGEST_SIZE - 1));
}

std::vector<double> encoded_rows(const Dataset& ds, const NormalizationBounds& bounds) {
  std::vector<double> out;
  out.reserve(ds.size() * kFeatureCount);
  for (const auto& row : ds.rows) {
    const auto e = encode(row.config, bounds);
    out.insert(out.end(), e.features.begin(), e.features.end());
  }
  return out;
}

shap::Predictor predictor_for(const SurrogateModel& m) {
  return [&m](std::span<const double> x, std::span<double> out) { ann::forward(m.net, x, out); };
}

std::vector<std::string> metric_names() { return {kMetricNames.begin(), kMetricNames.end()}; }

template <typename Writer>
void write_text_file(const char* path, Writer&& w) {
  require(path, "path");
  std::ostringstream out;
  w(out);
  text::write_file(path, out.str());
}

}  // namespace

extern "C" {

LBX_API const char* lbx_version(void) { return "1.0.0"; }

LBX_API const char* lbx_last_error(void) { return g_last_error.c_str(); }

LBX_API const char* lbx_metric_name(size_t metric) {
  return metric < kMetricCount ? kMetricNames[metric].data() : "";
}

LBX_API lbx_status lbx_file_digest(const char* path, char out[LBX_DIGEST_SIZE]) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    copy_digest(text::file_sha256_hex(path), out);
  });
}

LBX_API void lbx_grid_defaults(lbx_grid_params* out) {
  if (out) *out = to_c(GridParams{});
}

LBX_API void lbx_train_defaults(lbx_train_config* out) {
  if (out) *out = to_c(ann::TrainConfig{});
}

LBX_API void lbx_label_defaults(lbx_label_options* out) {
  if (!out) return;
  const LabelOptions d;
  out->oracle = LBX_ORACLE_PROXY;
  out->seed = d.seed;
  out->grid = to_c(d.grid);
  out->labels_path = nullptr;
  out->threads = 0;
}

LBX_API void lbx_room_defaults(lbx_room_config* out) {
  if (out) *out = to_c(RoomConfig{});
}

LBX_API lbx_status lbx_room_validate(const lbx_room_config* room) {
  return guarded([&] {
    require(room, "room");
    from_c(*room);
  });
}

LBX_API lbx_status lbx_space_preset(const char* name, lbx_space** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    auto s = std::make_unique<lbx_space>();
    s->space = DesignSpace::preset(name);
    s->configs = enumerate_design_space(s->space);
    *out = s.release();
  });
}

LBX_API lbx_status lbx_space_parse(const char* text_in, lbx_space** out) {
  return guarded([&] {
    require(text_in, "text");
    require(out, "out");
    auto s = std::make_unique<lbx_space>();
    s->space = DesignSpace::parse(text_in);
    s->configs = enumerate_design_space(s->space);
    *out = s.release();
  });
}

LBX_API lbx_status lbx_space_load(const char* path, lbx_space** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto s = std::make_unique<lbx_space>();
    s->space = DesignSpace::parse(text::read_file(path));
    s->configs = enumerate_design_space(s->space);
    *out = s.release();
  });
}

LBX_API size_t lbx_space_size(const lbx_space* space) { return space ? space->configs.size() : 0; }

LBX_API lbx_status lbx_space_bounds(const lbx_space* space, lbx_bounds* out) {
  return guarded([&] {
    require(space, "space");
    require(out, "out");
    *out = to_c(NormalizationBounds::from_space(space->space));
  });
}

LBX_API lbx_status lbx_space_config(const lbx_space* space, size_t index, lbx_room_config* out) {
  return guarded([&] {
    require(space, "space");
    require(out, "out");
    if (index >= space->configs.size()) fail(ErrorKind::OutOfRange, "config index out of range");
    *out = to_c(space->configs[index]);
  });
}

LBX_API void lbx_space_free(lbx_space* space) { delete space; }

LBX_API lbx_status lbx_view_metrics(const lbx_room_config* room, const lbx_grid_params* grid, lbx_view_result* out) {
  return guarded([&] {
    require(room, "room");
    require(out, "out");
    const auto r = from_c(*room);
    const auto g = build_grid(r, from_c(grid));
    const auto v = evaluate_views(r, g);
    out->view_factor = v.view_factor_fraction;
    out->view_depth = v.view_depth_fraction;
    out->view_range = v.view_range_fraction;
    out->quality_views_pass = v.quality_views_pass ? 1 : 0;
    out->points = g.size();
  });
}

LBX_API lbx_status lbx_view_export(const lbx_room_config* room, const lbx_grid_params* grid, const char* path) {
  return guarded([&] {
    require(room, "room");
    const auto r = from_c(*room);
    const auto v = evaluate_views(r, build_grid(r, from_c(grid)));
    write_text_file(path, [&](std::ostream& out) { write_point_table(out, v); });
  });
}

LBX_API lbx_status lbx_dataset_from_space(const lbx_space* space, const char* source, lbx_dataset** out) {
  return guarded([&] {
    require(space, "space");
    require(out, "out");
    auto d = std::make_unique<lbx_dataset>();
    d->data = make_config_set(space->space, source ? source : "");
    *out = d.release();
  });
}

LBX_API lbx_status lbx_dataset_load(const char* path, lbx_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto d = std::make_unique<lbx_dataset>();
    d->data = load_dataset(path);
    *out = d.release();
  });
}

LBX_API lbx_status lbx_dataset_save(const lbx_dataset* dataset, const char* path) {
  return guarded([&] {
    require(dataset, "dataset");
    require(path, "path");
    save_dataset(dataset->data, path);
  });
}

LBX_API lbx_status lbx_dataset_label(const lbx_dataset* configs, const lbx_label_options* options,
                                     lbx_dataset** out) {
  return guarded([&] {
    require(configs, "configs");
    require(out, "out");
    LabelOptions o;
    if (options) {
      o.seed = options->seed;
      o.grid = from_c(&options->grid);
      o.threads = options->threads;
    }
    auto d = std::make_unique<lbx_dataset>();
    if (options && options->oracle == LBX_ORACLE_INGEST) {
      require(options->labels_path, "labels_path");
      d->data = label_ingest(configs->data, text::read_file(options->labels_path), o);
    } else if (!options || options->oracle == LBX_ORACLE_PROXY) {
      d->data = label_proxy(configs->data, o);
    } else {
      fail(ErrorKind::Validation, "unknown oracle mode");
    }
    *out = d.release();
  });
}

LBX_API size_t lbx_dataset_size(const lbx_dataset* dataset) { return dataset ? dataset->data.size() : 0; }

LBX_API int lbx_dataset_is_labeled(const lbx_dataset* dataset) {
  return dataset && dataset->data.labeled() ? 1 : 0;
}

LBX_API lbx_status lbx_dataset_row(const lbx_dataset* dataset, size_t position, size_t* id, lbx_room_config* room,
                                   double metrics[LBX_METRIC_COUNT]) {
  return guarded([&] {
    require(dataset, "dataset");
    if (position >= dataset->data.size()) fail(ErrorKind::OutOfRange, "row position out of range");
    const auto& row = dataset->data.rows[position];
    if (id) *id = row.id;
    if (room) *room = to_c(row.config);
    if (metrics) std::copy(row.metrics.begin(), row.metrics.end(), metrics);
  });
}

LBX_API lbx_status lbx_dataset_sample(const lbx_dataset* dataset, size_t n, uint64_t seed, lbx_dataset** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    auto order = ann::shuffled_indices(dataset->data.size(), seed);
    if (n < order.size()) order.resize(n);
    auto d = std::make_unique<lbx_dataset>();
    d->data = select_rows(dataset->data, order);
    *out = d.release();
  });
}

LBX_API lbx_status lbx_dataset_split(const lbx_dataset* dataset, double fraction, uint64_t seed, lbx_dataset** train,
                                     lbx_dataset** test) {
  return guarded([&] {
    require(dataset, "dataset");
    const auto s = ann::split_indices(dataset->data.size(), fraction, seed);
    std::unique_ptr<lbx_dataset> a, b;
    if (train) {
      a = std::make_unique<lbx_dataset>();
      a->data = select_rows(dataset->data, s.train);
    }
    if (test) {
      b = std::make_unique<lbx_dataset>();
      b->data = select_rows(dataset->data, s.test);
    }
    if (train) *train = a.release();
    if (test) *test = b.release();
  });
}

LBX_API void lbx_dataset_free(lbx_dataset* dataset) { delete dataset; }

LBX_API lbx_status lbx_model_train(const lbx_dataset* labeled, const lbx_train_config* config, lbx_model** out,
                                   lbx_eval** holdout) {
  return guarded([&] {
    require(labeled, "dataset");
    require(out, "out");
    const auto cfg = config ? from_c(*config) : ann::TrainConfig{};
    auto f = fit(labeled->data, cfg);
    auto m = std::make_unique<lbx_model>();
    m->model = std::move(f.model);
    std::unique_ptr<lbx_eval> e;
    if (holdout) {
      e = std::make_unique<lbx_eval>();
      e->report = std::move(f.holdout);
    }
    *out = m.release();
    if (holdout) *holdout = e.release();
  });
}

LBX_API lbx_status lbx_model_load(const char* path, lbx_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto m = std::make_unique<lbx_model>();
    m->model = load_model(path);
    *out = m.release();
  });
}

LBX_API lbx_status lbx_model_save(const lbx_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    save_model(model->model, path);
  });
}

LBX_API lbx_status lbx_model_digest(const lbx_model* model, char out[LBX_DIGEST_SIZE]) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    copy_digest(model_digest(model->model), out);
  });
}

LBX_API lbx_status lbx_model_info_get(const lbx_model* model, lbx_model_info* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& m = model->model;
    out->inputs = m.net.inputs;
    out->hidden = m.net.hidden;
    out->outputs = m.net.outputs;
    out->train = to_c(m.train);
    out->grid = to_c(m.grid);
    out->bounds = to_c(m.bounds);
    out->epochs_recorded = m.loss_history.size();
  });
}

LBX_API lbx_status lbx_model_loss_history(const lbx_model* model, double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(model, "model");
    const auto& h = model->model.loss_history;
    if (count) *count = h.size();
    if (out) std::copy_n(h.begin(), std::min(capacity, h.size()), out);
  });
}

LBX_API lbx_status lbx_model_predict(const lbx_model* model, const lbx_room_config* room,
                                     double out[LBX_METRIC_COUNT], int* clamped) {
  return guarded([&] {
    require(model, "model");
    require(room, "room");
    require(out, "out");
    bool c = false;
    const auto y = model->model.predict(from_c(*room), &c);
    std::copy(y.begin(), y.end(), out);
    if (clamped) *clamped = c ? 1 : 0;
  });
}

LBX_API lbx_status lbx_model_validate(const lbx_model* model, const lbx_dataset* labeled, lbx_eval** out) {
  return guarded([&] {
    require(model, "model");
    require(labeled, "dataset");
    require(out, "out");
    auto e = std::make_unique<lbx_eval>();
    e->report = evaluate(model->model, labeled->data);
    *out = e.release();
  });
}

LBX_API void lbx_model_free(lbx_model* model) { delete model; }

LBX_API lbx_status lbx_eval_summary_get(const lbx_eval* eval, lbx_eval_summary* out) {
  return guarded([&] {
    require(eval, "eval");
    require(out, "out");
    const auto& r = eval->report;
    out->n = r.n;
    std::copy(r.mae.begin(), r.mae.end(), out->mae);
    std::copy(r.mse.begin(), r.mse.end(), out->mse);
    std::copy(r.max_abs_residual.begin(), r.max_abs_residual.end(), out->max_abs_residual);
    out->mean_mae = r.mean_mae();
  });
}

LBX_API lbx_status lbx_eval_residual(const lbx_eval* eval, size_t sample, size_t metric, double* out) {
  return guarded([&] {
    require(eval, "eval");
    require(out, "out");
    if (sample >= eval->report.n || metric >= kMetricCount) fail(ErrorKind::OutOfRange, "residual index out of range");
    *out = eval->report.residual(sample, metric);
  });
}

LBX_API lbx_status lbx_eval_write(const lbx_eval* eval, const char* path) {
  return guarded([&] {
    require(eval, "eval");
    require(path, "path");
    text::write_file(path, format_report(eval->report));
  });
}

LBX_API size_t lbx_eval_residual_text(const lbx_eval* eval, size_t metric, char* out, size_t capacity) {
  if (!eval || metric >= kMetricCount) return 0;
  const auto s = format_residual_distribution(eval->report, metric);
  if (out && capacity > 0) {
    const auto n = std::min(capacity - 1, s.size());
    std::memcpy(out, s.data(), n);
    out[n] = '\0';
  }
  return s.size();
}

LBX_API void lbx_eval_free(lbx_eval* eval) { delete eval; }

LBX_API lbx_status lbx_explain(const lbx_model* model, const lbx_dataset* samples, const lbx_dataset* background,
                               int per_feature, lbx_shap** out) {
  return guarded([&] {
    require(model, "model");
    require(samples, "samples");
    require(background, "background");
    require(out, "out");
    const auto& m = model->model;
    if (m.net.inputs != kFeatureCount) fail(ErrorKind::Validation, "model input width is not the room encoding");
    const auto grouping =
        per_feature ? shap::FeatureGrouping::per_feature(kFeatureCount) : shap::FeatureGrouping::room_default();
    const auto xs = encoded_rows(samples->data, m.bounds);
    const auto bg = encoded_rows(background->data, m.bounds);
    auto s = std::make_unique<lbx_shap>();
    s->summary = shap::summarize(predictor_for(m), m.net.outputs, xs, bg, grouping);
    *out = s.release();
  });
}

LBX_API lbx_status lbx_explain_room(const lbx_model* model, const lbx_room_config* room,
                                    const lbx_dataset* background, lbx_shap** out) {
  return guarded([&] {
    require(model, "model");
    require(room, "room");
    require(background, "background");
    require(out, "out");
    const auto& m = model->model;
    const auto x = encode(from_c(*room), m.bounds);
    const auto bg = encoded_rows(background->data, m.bounds);
    auto s = std::make_unique<lbx_shap>();
    s->summary = shap::summarize(predictor_for(m), m.net.outputs, x.features, bg, shap::FeatureGrouping::room_default());
    *out = s.release();
  });
}

LBX_API size_t lbx_shap_groups(const lbx_shap* shap) { return shap ? shap->summary.grouping.size() : 0; }

LBX_API size_t lbx_shap_samples(const lbx_shap* shap) { return shap ? shap->summary.samples.size() : 0; }

LBX_API const char* lbx_shap_group_name(const lbx_shap* shap, size_t group) {
  if (!shap || group >= shap->summary.grouping.size()) return "";
  return shap->summary.grouping.names[group].c_str();
}

LBX_API double lbx_shap_base(const lbx_shap* shap, size_t sample, size_t metric) {
  if (!shap || sample >= shap->summary.samples.size() || metric >= shap->summary.outputs) return 0.0;
  return shap->summary.samples[sample].base[metric];
}

LBX_API double lbx_shap_value(const lbx_shap* shap, size_t sample, size_t group, size_t metric) {
  if (!shap || sample >= shap->summary.samples.size() || group >= shap->summary.grouping.size() ||
      metric >= shap->summary.outputs) {
    return 0.0;
  }
  return shap->summary.samples[sample].value(group, metric);
}

LBX_API double lbx_shap_prediction(const lbx_shap* shap, size_t sample, size_t metric) {
  if (!shap || sample >= shap->summary.samples.size() || metric >= shap->summary.outputs) return 0.0;
  return shap->summary.samples[sample].prediction[metric];
}

LBX_API double lbx_shap_mean_abs(const lbx_shap* shap, size_t group, size_t metric) {
  if (!shap || group >= shap->summary.grouping.size() || metric >= shap->summary.outputs) return 0.0;
  return shap->summary.mean_abs_phi(group, metric);
}

LBX_API size_t lbx_shap_rank(const lbx_shap* shap, size_t metric, size_t rank) {
  if (!shap) return 0;
  const auto& s = shap->summary;
  if (rank >= s.grouping.size()) return s.grouping.size();
  if (metric == s.outputs) return s.overall_ranking[rank];
  if (metric > s.outputs) return s.grouping.size();
  return s.ranking[metric][rank];
}

LBX_API lbx_status lbx_shap_write_summary(const lbx_shap* shap, const char* path) {
  return guarded([&] {
    require(shap, "shap");
    write_text_file(path, [&](std::ostream& out) { shap::write_summary(out, shap->summary, metric_names()); });
  });
}

LBX_API lbx_status lbx_shap_write_scatter(const lbx_shap* shap, const char* path) {
  return guarded([&] {
    require(shap, "shap");
    write_text_file(path, [&](std::ostream& out) { shap::write_scatter(out, shap->summary, metric_names()); });
  });
}

LBX_API void lbx_shap_free(lbx_shap* shap) { delete shap; }

}  // extern "C"
