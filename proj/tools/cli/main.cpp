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
#include <atomic>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "handles.hpp"
#include "httplib.h"
#include "manifest.hpp"
#include "room_json.hpp"
#include "service.hpp"

namespace {

using namespace lightbox::tools;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

int exit_code(lbx_status s) {
  switch (s) {
    case LBX_OK: return kExitOk;
    case LBX_ERR_IO: return kExitIo;
    case LBX_ERR_VALIDATION:
    case LBX_ERR_INVALID_ARGUMENT:
    case LBX_ERR_OUT_OF_RANGE: return kExitValidation;
    default: return kExitFailure;
  }
}

struct SpaceFlags {
  std::string preset;
  std::string file;
  void add(CLI::App* app) {
    auto* p = app->add_option("--preset", preset, "Named design space")->check(CLI::IsMember({"table1", "table4"}));
    auto* f = app->add_option("--space", file, "Design-space file");
    p->excludes(f);
  }
  SpacePtr open() const {
    if (!file.empty()) return load_space(file);
    return load_preset(preset.empty() ? "table1" : preset);
  }
  std::string source() const { return file.empty() ? (preset.empty() ? "table1" : preset) : file; }
};

struct RoomFlags {
  lbx_room_config room{};
  std::string orientation, shading, divisions;
  RoomFlags() { lbx_room_defaults(&room); }
  void add(CLI::App* app) {
    app->add_option("--orientation", orientation, "N, E, S or W");
    app->add_option("--width", room.width, "Glazed wall length (m)");
    app->add_option("--depth", room.depth, "Room depth (m)");
    app->add_option("--height", room.height, "Ceiling height (m)");
    app->add_option("--reflectance", room.reflectance, "Interior reflectance");
    app->add_option("--shading", shading, "none or louvre");
    app->add_option("--sill-height", room.sill_height, "Sill height (m)");
    app->add_option("--window-height", room.window_height, "Window height (m)");
    app->add_option("--divisions", divisions, "one or three");
    app->add_option("--transmittance", room.glazing_transmittance, "Glazing visible transmittance");
  }
  lbx_room_config resolve() const {
    nlohmann::json j = room_to_json(room);
    if (!orientation.empty()) j["orientation"] = orientation;
    if (!shading.empty()) j["shading"] = shading;
    if (!divisions.empty()) j["divisions"] = divisions;
    lbx_room_config out;
    FieldError e;
    if (!room_from_json(j, room, out, e)) throw ApiError(LBX_ERR_VALIDATION, e.message);
    check(lbx_room_validate(&out));
    return out;
  }
};

void print_summary(const char* title, const lbx_eval_summary& s) {
  std::printf("%s (n=%zu)\n", title, s.n);
  std::printf("  %-12s %10s %10s\n", "metric", "mae", "mse");
  for (std::size_t k = 0; k < LBX_METRIC_COUNT; ++k) {
    std::printf("  %-12s %10.5f %10.6f\n", lbx_metric_name(k), s.mae[k], s.mse[k]);
  }
  std::printf("  %-12s %10.5f\n", "mean", s.mean_mae);
}

std::atomic<httplib::Server*> g_server{nullptr};

void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Daylight and view surrogate toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lbx_version()));

  // generate
  auto* gen = app.add_subcommand("generate", "Enumerate a design space into a configuration file");
  SpaceFlags gen_space;
  std::string gen_out;
  gen_space.add(gen);
  gen->add_option("-o,--out", gen_out, "Output configuration file")->required();

  // label
  auto* lab = app.add_subcommand("label", "Attach metric labels to a configuration file");
  std::string lab_in, lab_out, lab_oracle = "proxy", lab_labels;
  lbx_label_options lab_opts;
  lbx_label_defaults(&lab_opts);
  lab->add_option("configs", lab_in, "Configuration file")->required();
  lab->add_option("-o,--out", lab_out, "Labeled dataset file")->required();
  lab->add_option("--oracle", lab_oracle, "Label source")->check(CLI::IsMember({"proxy", "ingest"}));
  lab->add_option("--labels", lab_labels, "Simulation results to ingest");
  lab->add_option("--seed", lab_opts.seed, "Pseudo-climate seed");
  lab->add_option("--grid-spacing", lab_opts.grid.spacing, "Analysis grid spacing (m)");
  lab->add_option("--threads", lab_opts.threads, "Worker threads, 0 for all cores");

  // train
  auto* tr = app.add_subcommand("train", "Fit the surrogate on a labeled dataset");
  std::string tr_in, tr_out, tr_report, tr_opt = "sgd";
  lbx_train_config tcfg;
  lbx_train_defaults(&tcfg);
  tr->add_option("dataset", tr_in, "Labeled dataset file")->required();
  tr->add_option("-o,--out", tr_out, "Model file")->required();
  tr->add_option("--report", tr_report, "Held-out error report");
  tr->add_option("--epochs", tcfg.epochs, "Training epochs");
  tr->add_option("--batch-size", tcfg.batch_size, "Mini-batch size");
  tr->add_option("--neurons", tcfg.hidden, "Hidden neurons");
  tr->add_option("--lr", tcfg.learning_rate, "Learning rate");
  tr->add_option("--momentum", tcfg.momentum, "Momentum coefficient");
  tr->add_option("--optimizer", tr_opt, "sgd or adam")->check(CLI::IsMember({"sgd", "adam"}));
  tr->add_option("--train-fraction", tcfg.train_fraction, "Training share of the rows");
  tr->add_option("--seed", tcfg.seed, "Initialization and shuffling seed");

  // validate
  auto* val = app.add_subcommand("validate", "Error report of a model on a labeled dataset");
  std::string val_model, val_data, val_report;
  val->add_option("model", val_model, "Model file")->required();
  val->add_option("dataset", val_data, "Labeled validation dataset")->required();
  val->add_option("-o,--report", val_report, "Report file")->required();

  // explain
  auto* ex = app.add_subcommand("explain", "Shapley attributions of a model");
  std::string ex_model, ex_samples, ex_background, ex_prefix = "shap";
  std::size_t ex_bg_size = 100;
  std::uint64_t ex_seed = 42;
  bool ex_per_feature = false;
  RoomFlags ex_room;
  ex->add_option("model", ex_model, "Model file")->required();
  ex->add_option("--samples", ex_samples, "Dataset of rooms to explain; room flags explain one room otherwise");
  ex->add_option("--background", ex_background, "Baseline dataset; defaults to a table1 sample");
  ex->add_option("--background-size", ex_bg_size, "Size of the default baseline sample");
  ex->add_option("--seed", ex_seed, "Baseline sampling seed");
  ex->add_flag("--per-feature", ex_per_feature, "One group per encoded input");
  ex->add_option("-o,--out-prefix", ex_prefix, "Writes <prefix>_summary.csv and <prefix>_scatter.csv");
  ex_room.add(ex);

  // predict
  auto* pr = app.add_subcommand("predict", "Predict the metrics of one room");
  std::string pr_model;
  RoomFlags pr_room;
  pr->add_option("model", pr_model, "Model file")->required();
  pr_room.add(pr);

  // views
  auto* vw = app.add_subcommand("views", "Geometric view metrics of one room");
  RoomFlags vw_room;
  lbx_grid_params vw_grid;
  lbx_grid_defaults(&vw_grid);
  std::string vw_out;
  vw_room.add(vw);
  vw->add_option("--grid-spacing", vw_grid.spacing, "Analysis grid spacing (m)");
  vw->add_option("-o,--out", vw_out, "Per-point table");

  // serve
  auto* sv = app.add_subcommand("serve", "HTTP JSON service");
  std::string sv_model, sv_bind = "127.0.0.1:8080", sv_background;
  sv->add_option("model", sv_model, "Model file")->required();
  sv->add_option("--bind", sv_bind, "host:port");
  sv->add_option("--background", sv_background, "Baseline dataset for /explain");

  // run
  auto* rn = app.add_subcommand("run", "Full pipeline from a run manifest");
  std::string rn_manifest;
  rn->add_option("--manifest", rn_manifest, "Run manifest (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen) {
      auto space = gen_space.open();
      auto ds = configs_of(space.get(), gen_space.source());
      check(lbx_dataset_save(ds.get(), gen_out.c_str()));
      std::printf("wrote %zu configurations to %s\n", lbx_dataset_size(ds.get()), gen_out.c_str());
    } else if (*lab) {
      auto configs = load_dataset(lab_in);
      lab_opts.oracle = lab_oracle == "ingest" ? LBX_ORACLE_INGEST : LBX_ORACLE_PROXY;
      if (lab_opts.oracle == LBX_ORACLE_INGEST && lab_labels.empty()) {
        throw ApiError(LBX_ERR_VALIDATION, "--oracle ingest needs --labels");
      }
      lab_opts.labels_path = lab_labels.empty() ? nullptr : lab_labels.c_str();
      lbx_dataset* out = nullptr;
      check(lbx_dataset_label(configs.get(), &lab_opts, &out));
      DatasetPtr labeled(out);
      check(lbx_dataset_save(labeled.get(), lab_out.c_str()));
      std::printf("labeled %zu rows (%s) -> %s\n", lbx_dataset_size(labeled.get()), lab_oracle.c_str(),
                  lab_out.c_str());
    } else if (*tr) {
      tcfg.optimizer = tr_opt == "adam" ? LBX_OPT_ADAM : LBX_OPT_SGD_MOMENTUM;
      std::printf("epochs=%zu batch=%zu neurons=%zu lr=%g momentum=%g optimizer=%s seed=%llu\n", tcfg.epochs,
                  tcfg.batch_size, tcfg.hidden, tcfg.learning_rate, tcfg.momentum, tr_opt.c_str(),
                  static_cast<unsigned long long>(tcfg.seed));
      auto data = load_dataset(tr_in);
      lbx_model* m = nullptr;
      lbx_eval* e = nullptr;
      check(lbx_model_train(data.get(), &tcfg, &m, &e));
      ModelPtr model(m);
      EvalPtr holdout(e);
      check(lbx_model_save(model.get(), tr_out.c_str()));
      if (!tr_report.empty()) check(lbx_eval_write(holdout.get(), tr_report.c_str()));
      lbx_eval_summary s;
      check(lbx_eval_summary_get(holdout.get(), &s));
      print_summary("held-out error", s);
      std::printf("model digest %s\n", model_digest(model.get()).c_str());
    } else if (*val) {
      auto model = load_model(val_model);
      auto data = load_dataset(val_data);
      lbx_eval* e = nullptr;
      check(lbx_model_validate(model.get(), data.get(), &e));
      EvalPtr ev(e);
      check(lbx_eval_write(ev.get(), val_report.c_str()));
      lbx_eval_summary s;
      check(lbx_eval_summary_get(ev.get(), &s));
      print_summary("validation error", s);
    } else if (*ex) {
      auto model = load_model(ex_model);
      DatasetPtr background;
      if (!ex_background.empty()) {
        background = load_dataset(ex_background);
      } else {
        auto all = configs_of(load_preset("table1").get(), "table1");
        lbx_dataset* b = nullptr;
        check(lbx_dataset_sample(all.get(), ex_bg_size, ex_seed, &b));
        background.reset(b);
      }
      lbx_shap* raw = nullptr;
      if (!ex_samples.empty()) {
        auto samples = load_dataset(ex_samples);
        check(lbx_explain(model.get(), samples.get(), background.get(), ex_per_feature ? 1 : 0, &raw));
      } else {
        const auto room = ex_room.resolve();
        check(lbx_explain_room(model.get(), &room, background.get(), &raw));
      }
      ShapPtr shap(raw);
      const auto groups = lbx_shap_groups(shap.get());
      double worst = 0.0;
      for (std::size_t i = 0; i < lbx_shap_samples(shap.get()); ++i) {
        double sample_gap = 0.0;
        for (std::size_t k = 0; k < LBX_METRIC_COUNT; ++k) {
          double total = lbx_shap_base(shap.get(), i, k);
          for (std::size_t g = 0; g < groups; ++g) total += lbx_shap_value(shap.get(), i, g, k);
          sample_gap = std::max(sample_gap, std::abs(total - lbx_shap_prediction(shap.get(), i, k)));
        }
        std::printf("sample %zu efficiency gap %.3e\n", i, sample_gap);
        worst = std::max(worst, sample_gap);
      }
      const auto summary = ex_prefix + "_summary.csv";
      const auto scatter = ex_prefix + "_scatter.csv";
      check(lbx_shap_write_summary(shap.get(), summary.c_str()));
      check(lbx_shap_write_scatter(shap.get(), scatter.c_str()));
      std::printf("overall ranking:");
      for (std::size_t r = 0; r < groups; ++r) {
        std::printf(" %s", lbx_shap_group_name(shap.get(), lbx_shap_rank(shap.get(), LBX_METRIC_COUNT, r)));
      }
      std::printf("\nworst efficiency gap %.3e; wrote %s, %s\n", worst, summary.c_str(), scatter.c_str());
    } else if (*pr) {
      auto model = load_model(pr_model);
      const auto room = pr_room.resolve();
      double out[LBX_METRIC_COUNT];
      int clamped = 0;
      check(lbx_model_predict(model.get(), &room, out, &clamped));
      nlohmann::json j = {{"room", room_to_json(room)}, {"clamped", clamped != 0}};
      for (std::size_t k = 0; k < LBX_METRIC_COUNT; ++k) j["prediction"][lbx_metric_name(k)] = out[k];
      std::cout << j.dump(2) << '\n';
    } else if (*vw) {
      const auto room = vw_room.resolve();
      lbx_view_result v;
      check(lbx_view_metrics(&room, &vw_grid, &v));
      std::printf("view_range %.6f\nview_depth %.6f\nview_factor %.6f\nquality_views_pass %s\npoints %zu\n",
                  v.view_range, v.view_depth, v.view_factor, v.quality_views_pass ? "yes" : "no", v.points);
      if (!vw_out.empty()) check(lbx_view_export(&room, &vw_grid, vw_out.c_str()));
    } else if (*sv) {
      auto service = Service::open(sv_model, sv_background);
      const auto colon = sv_bind.rfind(':');
      if (colon == std::string::npos) throw ApiError(LBX_ERR_VALIDATION, "--bind expects host:port");
      const auto host = sv_bind.substr(0, colon);
      int port = 0;
      try {
        port = std::stoi(sv_bind.substr(colon + 1));
      } catch (const std::exception&) {
        throw ApiError(LBX_ERR_VALIDATION, "--bind port is not a number");
      }
      httplib::Server server;
      service.mount(server);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::printf("serving model %s on %s\n", service.digest().c_str(), sv_bind.c_str());
      std::fflush(stdout);
      if (!server.listen(host, port)) throw ApiError(LBX_ERR_IO, "cannot bind " + sv_bind);
      g_server = nullptr;
    } else if (*rn) {
      const auto manifest = load_manifest(rn_manifest);
      const auto result = run_pipeline(manifest);
      print_summary("held-out error", result.holdout);
      if (result.has_validation) print_summary("validation error", result.validation);
      for (const auto& [key, digest] : result.digests) std::printf("%-20s %s\n", key.c_str(), digest.c_str());
    }
  } catch (const ApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.status());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitOk;
}
