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
#include "service.hpp"

#include <algorithm>
#include <set>

#include "httplib.h"
#include "room_json.hpp"

namespace lightbox::tools {

namespace {

using nlohmann::json;

json metrics_json(const double* v) {
  json out = json::object();
  for (std::size_t k = 0; k < LBX_METRIC_COUNT; ++k) out[lbx_metric_name(k)] = v[k];
  return out;
}

Response error_response(int status, const std::string& kind, const std::string& field, const std::string& message) {
  json body = {{"error", kind}, {"message", message}};
  if (!field.empty()) body["field"] = field;
  return {status, body};
}

Response api_failure(const ApiError& e) {
  if (e.status() == LBX_ERR_VALIDATION || e.status() == LBX_ERR_OUT_OF_RANGE) {
    return error_response(422, "invalid_room", "", e.what());
  }
  return error_response(500, "internal", "", e.what());
}

json range_json(const lbx_range& r, const char* unit) {
  return {{"min", r.lo}, {"max", r.hi}, {"unit", unit}};
}

template <typename T>
json sorted_levels(const std::set<T>& s) {
  json a = json::array();
  for (const auto& v : s) a.push_back(v);
  return a;
}

json build_design_space(const lbx_model_info& info, const lbx_room_config& d) {
  auto space = load_preset("table1");
  std::set<int> orientations, shadings, divisions;
  std::set<double> reflectances, sills, heads;
  std::set<std::pair<double, double>> dims;
  const auto n = lbx_space_size(space.get());
  for (std::size_t i = 0; i < n; ++i) {
    lbx_room_config r;
    check(lbx_space_config(space.get(), i, &r));
    orientations.insert(r.orientation);
    shadings.insert(r.shading);
    divisions.insert(r.divisions);
    reflectances.insert(r.reflectance);
    sills.insert(r.sill_height);
    heads.insert(r.window_height);
    dims.insert({r.width, r.depth});
  }
  auto tokens = [](const std::set<int>& s, const char* (*name)(int)) {
    json a = json::array();
    for (int v : s) a.push_back(name(v));
    return a;
  };
  json dim_levels = json::array();
  for (const auto& [w, dp] : dims) dim_levels.push_back({{"width", w}, {"depth", dp}});

  const auto& b = info.bounds;
  json vars = json::array();
  vars.push_back({{"name", "orientation"},
                  {"kind", "categorical"},
                  {"fields", {"orientation"}},
                  {"levels", tokens(orientations, orientation_token)},
                  {"default", orientation_token(d.orientation)},
                  {"unit", "facade direction"}});
  vars.push_back({{"name", "room_dimensions"},
                  {"kind", "continuous"},
                  {"fields", {"width", "depth"}},
                  {"ranges", {{"width", range_json(b.width, "m")}, {"depth", range_json(b.depth, "m")}}},
                  {"levels", dim_levels},
                  {"default", {{"width", d.width}, {"depth", d.depth}}},
                  {"unit", "m"}});
  vars.push_back({{"name", "reflectance"},
                  {"kind", "continuous"},
                  {"fields", {"reflectance"}},
                  {"range", range_json(b.reflectance, "fraction")},
                  {"levels", sorted_levels(reflectances)},
                  {"default", d.reflectance},
                  {"unit", "fraction"}});
  vars.push_back({{"name", "shading"},
                  {"kind", "categorical"},
                  {"fields", {"shading"}},
                  {"levels", tokens(shadings, shading_token)},
                  {"default", shading_token(d.shading)},
                  {"unit", "device"}});
  vars.push_back({{"name", "sill_height"},
                  {"kind", "continuous"},
                  {"fields", {"sill_height"}},
                  {"range", range_json(b.sill_height, "m")},
                  {"levels", sorted_levels(sills)},
                  {"default", d.sill_height},
                  {"unit", "m"}});
  vars.push_back({{"name", "window_height"},
                  {"kind", "continuous"},
                  {"fields", {"window_height"}},
                  {"range", range_json(b.window_height, "m")},
                  {"levels", sorted_levels(heads)},
                  {"default", d.window_height},
                  {"unit", "m"}});
  vars.push_back({{"name", "divisions"},
                  {"kind", "categorical"},
                  {"fields", {"divisions"}},
                  {"levels", tokens(divisions, divisions_token)},
                  {"default", divisions_token(d.divisions)},
                  {"unit", "window count"}});

  json metrics = json::array();
  for (std::size_t k = 0; k < LBX_METRIC_COUNT; ++k) metrics.push_back(lbx_metric_name(k));
  return {{"variables", vars},
          {"fixed", {{"height", {{"default", d.height}, {"unit", "m"}}},
                     {"glazing_transmittance", {{"default", d.glazing_transmittance}, {"unit", "fraction"}}}}},
          {"metrics", metrics},
          {"metric_unit", "fraction in [0, 1]"}};
}

}  // namespace

Service::Service(ModelPtr model, DatasetPtr background) : model_(std::move(model)), background_(std::move(background)) {
  if (!model_ || !background_) throw ApiError(LBX_ERR_INVALID_ARGUMENT, "service needs a model and a background");
  check(lbx_model_info_get(model_.get(), &info_));
  lbx_room_defaults(&defaults_);
  digest_ = model_digest(model_.get());
  design_space_ = build_design_space(info_, defaults_);
}

Service Service::open(const std::string& model_path, const std::string& background_path, std::size_t background_size,
                      std::uint64_t seed) {
  auto model = load_model(model_path);
  DatasetPtr background;
  if (!background_path.empty()) {
    background = load_dataset(background_path);
  } else {
    auto all = configs_of(load_preset("table1").get(), "table1");
    lbx_dataset* sample = nullptr;
    check(lbx_dataset_sample(all.get(), background_size, seed, &sample));
    background.reset(sample);
  }
  return Service(std::move(model), std::move(background));
}

bool Service::parse_room(const std::string& body, lbx_room_config& room, Response& error) const {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) {
    error = error_response(400, "malformed_json", "", "request body is not valid JSON");
    return false;
  }
  FieldError fe;
  if (!room_from_json(parsed, defaults_, room, fe)) {
    error = error_response(400, "malformed_field", fe.field, fe.message);
    return false;
  }
  BoundError be;
  if (room_out_of_bounds(room, info_.bounds, be)) {
    error = error_response(422, "out_of_range", be.field,
                           "field '" + be.field + "' is outside [" + std::to_string(be.min) + ", " +
                               std::to_string(be.max) + "]");
    error.body["value"] = be.value;
    error.body["bound"] = {{"min", be.min}, {"max", be.max}};
    return false;
  }
  if (lbx_room_validate(&room) != LBX_OK) {
    error = error_response(422, "invalid_room", "", lbx_last_error());
    return false;
  }
  return true;
}

Response Service::health() const {
  return {200, {{"status", "ok"}, {"model_digest", digest_}, {"version", lbx_version()}}};
}

Response Service::design_space() const { return {200, design_space_}; }

Response Service::predict(const std::string& body) const {
  lbx_room_config room;
  Response err;
  if (!parse_room(body, room, err)) return err;
  try {
    double pred[LBX_METRIC_COUNT];
    int clamped = 0;
    check(lbx_model_predict(model_.get(), &room, pred, &clamped));
    lbx_view_result views;
    check(lbx_view_metrics(&room, &info_.grid, &views));
    const double geometric[3] = {views.view_range, views.view_depth, views.view_factor};
    json geo = {{"view_range", geometric[0]}, {"view_depth", geometric[1]}, {"view_factor", geometric[2]}};
    json surrogate_error = json::object();
    for (std::size_t i = 0; i < 3; ++i) {
      const auto k = LBX_METRIC_VIEW_RANGE + i;
      surrogate_error[lbx_metric_name(k)] = pred[k] - geometric[i];
    }
    const int predicted_pass = (pred[LBX_METRIC_VIEW_RANGE] >= 0.75) + (pred[LBX_METRIC_VIEW_DEPTH] >= 0.75) +
                               (pred[LBX_METRIC_VIEW_FACTOR] >= 0.75);
    return {200,
            {{"room", room_to_json(room)},
             {"prediction", metrics_json(pred)},
             {"geometric_views", geo},
             {"view_surrogate_error", surrogate_error},
             {"quality_views_pass", views.quality_views_pass != 0},
             {"predicted_quality_views_pass", predicted_pass >= 2},
             {"grid_points", views.points},
             {"clamped", clamped != 0},
             {"model_digest", digest_}}};
  } catch (const ApiError& e) {
    return api_failure(e);
  }
}

Response Service::explain(const std::string& body) const {
  lbx_room_config room;
  Response err;
  if (!parse_room(body, room, err)) return err;
  try {
    lbx_shap* raw = nullptr;
    check(lbx_explain_room(model_.get(), &room, background_.get(), &raw));
    ShapPtr shap(raw);
    const auto groups = lbx_shap_groups(shap.get());
    json names = json::array();
    for (std::size_t g = 0; g < groups; ++g) names.push_back(lbx_shap_group_name(shap.get(), g));
    json base = json::object(), pred = json::object(), phi = json::object(), gap = json::object();
    for (std::size_t k = 0; k < LBX_METRIC_COUNT; ++k) {
      const std::string m = lbx_metric_name(k);
      base[m] = lbx_shap_base(shap.get(), 0, k);
      pred[m] = lbx_shap_prediction(shap.get(), 0, k);
      json per = json::object();
      double total = base[m].get<double>();
      for (std::size_t g = 0; g < groups; ++g) {
        const double v = lbx_shap_value(shap.get(), 0, g, k);
        per[lbx_shap_group_name(shap.get(), g)] = v;
        total += v;
      }
      phi[m] = per;
      gap[m] = total - pred[m].get<double>();
    }
    return {200,
            {{"room", room_to_json(room)},
             {"groups", names},
             {"base", base},
             {"phi", phi},
             {"prediction", pred},
             {"efficiency_gap", gap},
             {"background_size", lbx_dataset_size(background_.get())},
             {"model_digest", digest_}}};
  } catch (const ApiError& e) {
    return api_failure(e);
  }
}

void Service::mount(httplib::Server& server) const {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
  server.Get("/design-space",
             [this, send](const httplib::Request&, httplib::Response& res) { send(res, design_space()); });
  server.Post("/predict",
              [this, send](const httplib::Request& req, httplib::Response& res) { send(res, predict(req.body)); });
  server.Post("/explain",
              [this, send](const httplib::Request& req, httplib::Response& res) { send(res, explain(req.body)); });
}

}  // namespace lightbox::tools
