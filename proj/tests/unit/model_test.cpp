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

#include "dataset.hpp"
#include "error.hpp"
#include "model.hpp"

namespace lightbox {
namespace {

Dataset small_labeled() {
  auto s = DesignSpace::table4();
  LabelOptions o;
  o.threads = 1;
  return label_proxy(make_config_set(s, "table4"), o);
}

SurrogateModel quick_model() {
  ann::TrainConfig cfg;
  cfg.epochs = 5;
  return fit(small_labeled(), cfg).model;
}

TEST(ModelFile, RoundTripIsBitExact) {
  const auto m = quick_model();
  const auto text = format_model(m);
  EXPECT_EQ(text.rfind("lightbox-model 1", 0), 0u);
  const auto back = parse_model(text);
  EXPECT_EQ(back.net.params, m.net.params);
  EXPECT_EQ(back.loss_history, m.loss_history);
  EXPECT_EQ(back.bounds, m.bounds);
  EXPECT_EQ(back.grid, m.grid);
  EXPECT_EQ(format_model(back), text);
  EXPECT_EQ(model_digest(back), model_digest(m));
  EXPECT_EQ(model_digest(m).size(), 64u);
}

TEST(ModelFile, RejectsCorruption) {
  const auto text = format_model(quick_model());
  EXPECT_THROW(parse_model("not a model"), Error);
  EXPECT_THROW(parse_model(text.substr(0, text.size() / 2)), Error);
  auto bad = text;
  bad.replace(bad.find("hidden"), 6, "hiddex");
  EXPECT_THROW(parse_model(bad), Error);
}

TEST(Predict, EightBoundedOutputs) {
  const auto m = quick_model();
  RoomConfig c;
  c.width = 7.0;
  c.depth = 8.0;
  c.sill_height = 0.9;
  bool clamped = true;
  const auto y = m.predict(c, &clamped);
  EXPECT_FALSE(clamped);
  EXPECT_TRUE(in_unit_interval(y));
  RoomConfig big = c;
  big.width = 20.0;
  m.predict(big, &clamped);
  EXPECT_TRUE(clamped);
}

TEST(Report, PerfectPredictionsGiveZeroErrors) {
  std::vector<double> target(3 * kMetricCount);
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = 0.01 * static_cast<double>(i);
  const auto r = evaluate_predictions(target, target);
  EXPECT_EQ(r.n, 3u);
  for (std::size_t k = 0; k < kMetricCount; ++k) {
    EXPECT_EQ(r.mae[k], 0.0);
    EXPECT_EQ(r.mse[k], 0.0);
  }
  EXPECT_EQ(r.mean_mae(), 0.0);
}

TEST(Report, EightRowsWithReferenceColumns) {
  std::vector<double> p(2 * kMetricCount, 0.5), t(2 * kMetricCount, 0.4);
  t[0] = 0.7;
  const auto r = evaluate_predictions(p, t);
  EXPECT_NEAR(r.mae[0], 0.15, 1e-12);
  EXPECT_NEAR(r.max_abs_residual[0], 0.2, 1e-12);
  EXPECT_NEAR(r.residual(0, 0), -0.2, 1e-12);
  const auto text = format_report(r);
  std::size_t data_rows = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(start, end - start);
    if (!line.empty() && line[0] != '#' && line.rfind("group,", 0) != 0) ++data_rows;
    start = end == std::string::npos ? text.size() : end + 1;
  }
  EXPECT_EQ(data_rows, kMetricCount);
  EXPECT_NE(text.find("reference_mae"), std::string::npos);
  EXPECT_NE(text.find("view_range,"), std::string::npos);
  EXPECT_NE(format_residual_distribution(r, 0).find("udi"), std::string::npos);
}

TEST(Fit, HoldsOutTwentyPercent) {
  ann::TrainConfig cfg;
  cfg.epochs = 3;
  const auto ds = small_labeled();
  const auto f = fit(ds, cfg);
  EXPECT_EQ(f.split.train.size(), 51u);
  EXPECT_EQ(f.split.test.size(), 13u);
  EXPECT_EQ(f.holdout.n, 13u);
  EXPECT_EQ(f.model.loss_history.size(), 3u);
  EXPECT_EQ(f.model.bounds, ds.meta.bounds);
  EXPECT_THROW(fit(make_config_set(DesignSpace::table4(), "x"), cfg), Error);
  Dataset empty = ds;
  empty.rows.clear();
  EXPECT_THROW(fit(empty, cfg), Error);
}

}  // namespace
}  // namespace lightbox
