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
#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "lightbox/lightbox.h"

namespace {

namespace fs = std::filesystem;

struct Fixture : ::testing::Test {
  static lbx_dataset* labeled;
  static lbx_model* model;

  static void SetUpTestSuite() {
    lbx_space* space = nullptr;
    ASSERT_EQ(lbx_space_preset("table4", &space), LBX_OK);
    lbx_dataset* configs = nullptr;
    ASSERT_EQ(lbx_dataset_from_space(space, "table4", &configs), LBX_OK);
    lbx_label_options o;
    lbx_label_defaults(&o);
    o.threads = 1;
    ASSERT_EQ(lbx_dataset_label(configs, &o, &labeled), LBX_OK);
    lbx_train_config cfg;
    lbx_train_defaults(&cfg);
    cfg.epochs = 5;
    ASSERT_EQ(lbx_model_train(labeled, &cfg, &model, nullptr), LBX_OK);
    lbx_dataset_free(configs);
    lbx_space_free(space);
  }
  static void TearDownTestSuite() {
    lbx_model_free(model);
    lbx_dataset_free(labeled);
  }
};
lbx_dataset* Fixture::labeled = nullptr;
lbx_model* Fixture::model = nullptr;

TEST(CApi, DefaultsMatchTheReferenceSetup) {
  lbx_train_config t;
  lbx_train_defaults(&t);
  EXPECT_EQ(t.epochs, 50u);
  EXPECT_EQ(t.batch_size, 10u);
  EXPECT_EQ(t.hidden, 40u);
  EXPECT_DOUBLE_EQ(t.learning_rate, 0.01);
  EXPECT_DOUBLE_EQ(t.train_fraction, 0.8);
  lbx_grid_params g;
  lbx_grid_defaults(&g);
  EXPECT_DOUBLE_EQ(g.spacing, 0.5);
  EXPECT_STREQ(lbx_metric_name(LBX_METRIC_VIEW_RANGE), "view_range");
  EXPECT_STREQ(lbx_metric_name(99), "");
}

TEST(CApi, StatusCodesAndLastError) {
  lbx_space* s = nullptr;
  EXPECT_EQ(lbx_space_preset("nope", &s), LBX_ERR_VALIDATION);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(lbx_last_error()).find("nope"), std::string::npos);
  EXPECT_EQ(lbx_space_preset(nullptr, &s), LBX_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(lbx_dataset_load("/nonexistent/x.csv", nullptr), LBX_ERR_INVALID_ARGUMENT);
  lbx_dataset* d = nullptr;
  EXPECT_EQ(lbx_dataset_load("/nonexistent/x.csv", &d), LBX_ERR_IO);
  ASSERT_EQ(lbx_space_preset("table1", &s), LBX_OK);
  EXPECT_STREQ(lbx_last_error(), "");
  EXPECT_EQ(lbx_space_size(s), 2880u);
  lbx_room_config r;
  EXPECT_EQ(lbx_space_config(s, 2880, &r), LBX_ERR_OUT_OF_RANGE);
  ASSERT_EQ(lbx_space_config(s, 0, &r), LBX_OK);
  EXPECT_EQ(r.orientation, LBX_NORTH);
  lbx_space_free(s);
  lbx_space_free(nullptr);
}

TEST(CApi, RoomValidation) {
  lbx_room_config r;
  lbx_room_defaults(&r);
  EXPECT_EQ(lbx_room_validate(&r), LBX_OK);
  r.orientation = 7;
  EXPECT_EQ(lbx_room_validate(&r), LBX_ERR_VALIDATION);
  lbx_room_defaults(&r);
  r.window_height = 5.0;
  EXPECT_EQ(lbx_room_validate(&r), LBX_ERR_VALIDATION);
}

TEST(CApi, ViewMetrics) {
  lbx_room_config r;
  lbx_room_defaults(&r);
  lbx_view_result v;
  ASSERT_EQ(lbx_view_metrics(&r, nullptr, &v), LBX_OK);
  EXPECT_EQ(v.points, 168u);
  EXPECT_GE(v.view_factor, 0.0);
  EXPECT_LE(v.view_factor, 1.0);
  lbx_grid_params bad{0.0, 0.76, 0.25};
  EXPECT_EQ(lbx_view_metrics(&r, &bad, &v), LBX_ERR_INVALID_ARGUMENT);
}

TEST_F(Fixture, DatasetAccessAndSplits) {
  EXPECT_EQ(lbx_dataset_size(labeled), 64u);
  EXPECT_TRUE(lbx_dataset_is_labeled(labeled));
  size_t id = 99;
  double m[LBX_METRIC_COUNT];
  ASSERT_EQ(lbx_dataset_row(labeled, 3, &id, nullptr, m), LBX_OK);
  EXPECT_EQ(id, 3u);
  lbx_dataset *a = nullptr, *b = nullptr;
  ASSERT_EQ(lbx_dataset_split(labeled, 0.75, 1, &a, &b), LBX_OK);
  EXPECT_EQ(lbx_dataset_size(a), 48u);
  EXPECT_EQ(lbx_dataset_size(b), 16u);
  lbx_dataset* s = nullptr;
  ASSERT_EQ(lbx_dataset_sample(labeled, 10, 3, &s), LBX_OK);
  EXPECT_EQ(lbx_dataset_size(s), 10u);
  lbx_dataset_free(a);
  lbx_dataset_free(b);
  lbx_dataset_free(s);
}

TEST_F(Fixture, ModelPersistenceAndPrediction) {
  const auto path = (fs::temp_directory_path() / "lightbox_capi_model.txt").string();
  ASSERT_EQ(lbx_model_save(model, path.c_str()), LBX_OK);
  lbx_model* back = nullptr;
  ASSERT_EQ(lbx_model_load(path.c_str(), &back), LBX_OK);
  char d1[LBX_DIGEST_SIZE], d2[LBX_DIGEST_SIZE], d3[LBX_DIGEST_SIZE];
  ASSERT_EQ(lbx_model_digest(model, d1), LBX_OK);
  ASSERT_EQ(lbx_model_digest(back, d2), LBX_OK);
  ASSERT_EQ(lbx_file_digest(path.c_str(), d3), LBX_OK);
  EXPECT_STREQ(d1, d2);
  EXPECT_EQ(std::strlen(d1), 64u);

  lbx_model_info info;
  ASSERT_EQ(lbx_model_info_get(back, &info), LBX_OK);
  EXPECT_EQ(info.inputs, static_cast<size_t>(LBX_FEATURE_COUNT));
  EXPECT_EQ(info.outputs, static_cast<size_t>(LBX_METRIC_COUNT));
  EXPECT_EQ(info.epochs_recorded, 5u);
  size_t n = 0;
  double hist[5];
  ASSERT_EQ(lbx_model_loss_history(back, hist, 5, &n), LBX_OK);
  EXPECT_EQ(n, 5u);

  lbx_room_config r;
  lbx_room_defaults(&r);
  double y1[LBX_METRIC_COUNT], y2[LBX_METRIC_COUNT];
  int clamped = 0;
  ASSERT_EQ(lbx_model_predict(model, &r, y1, &clamped), LBX_OK);
  ASSERT_EQ(lbx_model_predict(back, &r, y2, nullptr), LBX_OK);
  for (int k = 0; k < LBX_METRIC_COUNT; ++k) EXPECT_EQ(y1[k], y2[k]);
  EXPECT_EQ(clamped, 1);  // 0.7 m sill lies below the table4 range
  lbx_model_free(back);
  fs::remove(path);
}

TEST_F(Fixture, EvaluationAndExplanation) {
  lbx_eval* ev = nullptr;
  ASSERT_EQ(lbx_model_validate(model, labeled, &ev), LBX_OK);
  lbx_eval_summary s;
  ASSERT_EQ(lbx_eval_summary_get(ev, &s), LBX_OK);
  EXPECT_EQ(s.n, 64u);
  double r = 0.0;
  EXPECT_EQ(lbx_eval_residual(ev, 64, 0, &r), LBX_ERR_OUT_OF_RANGE);
  const size_t need = lbx_eval_residual_text(ev, 0, nullptr, 0);
  EXPECT_GT(need, 0u);
  std::string buf(need + 1, '\0');
  EXPECT_EQ(lbx_eval_residual_text(ev, 0, buf.data(), buf.size()), need);
  lbx_eval_free(ev);

  lbx_dataset* few = nullptr;
  ASSERT_EQ(lbx_dataset_sample(labeled, 4, 9, &few), LBX_OK);
  lbx_shap* sh = nullptr;
  ASSERT_EQ(lbx_explain(model, few, labeled, 0, &sh), LBX_OK);
  EXPECT_EQ(lbx_shap_groups(sh), 7u);
  EXPECT_EQ(lbx_shap_samples(sh), 4u);
  for (size_t i = 0; i < 4; ++i) {
    for (size_t k = 0; k < LBX_METRIC_COUNT; ++k) {
      double total = lbx_shap_base(sh, i, k);
      for (size_t g = 0; g < 7; ++g) total += lbx_shap_value(sh, i, g, k);
      EXPECT_NEAR(total, lbx_shap_prediction(sh, i, k), 1e-9);
    }
  }
  EXPECT_LT(lbx_shap_rank(sh, LBX_METRIC_COUNT, 0), 7u);
  EXPECT_EQ(lbx_shap_rank(sh, LBX_METRIC_COUNT + 1, 0), 7u);
  lbx_shap_free(sh);
  ASSERT_EQ(lbx_explain(model, few, labeled, 1, &sh), LBX_OK);
  EXPECT_EQ(lbx_shap_groups(sh), 11u);
  EXPECT_STREQ(lbx_shap_group_name(sh, 99), "");
  lbx_shap_free(sh);
  lbx_dataset_free(few);
}

}  // namespace
