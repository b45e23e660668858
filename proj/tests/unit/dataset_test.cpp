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

#include <filesystem>
#include <sstream>

#include "dataset.hpp"
#include "error.hpp"
#include "textio.hpp"

namespace lightbox {
namespace {

Dataset small_configs() {
  auto s = DesignSpace::table4();
  s.orientations = {Orientation::South};
  s.dimensions = {{5.0, 6.0}};
  return make_config_set(s, "small");  // 16 rooms
}

LabelOptions fast_options() {
  LabelOptions o;
  o.threads = 1;
  return o;
}

std::string error_text(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigSet, IdsFollowEnumeration) {
  const auto ds = make_config_set(DesignSpace::table1(), "table1");
  ASSERT_EQ(ds.size(), 2880u);
  EXPECT_FALSE(ds.labeled());
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(ds.rows[i].id, i);
  EXPECT_EQ(ds.meta.bounds, NormalizationBounds{});
}

TEST(DatasetFile, UnlabeledRoundTrip) {
  const auto ds = small_configs();
  const auto text = format_dataset(ds);
  EXPECT_EQ(text.rfind("# lightbox-dataset 1", 0), 0u);
  const auto back = parse_dataset(text);
  ASSERT_EQ(back.size(), ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(back.rows[i].config, ds.rows[i].config);
  EXPECT_EQ(format_dataset(back), text);
}

TEST(DatasetFile, LabeledRoundTripIsExact) {
  const auto labeled = label_proxy(small_configs(), fast_options());
  const auto back = parse_dataset(format_dataset(labeled));
  ASSERT_TRUE(back.labeled());
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    for (std::size_t k = 0; k < kMetricCount; ++k) EXPECT_EQ(back.rows[i].metrics[k], labeled.rows[i].metrics[k]);
  }
  EXPECT_EQ(back.meta.seed, 42u);
  EXPECT_EQ(back.meta.provenance, Provenance::ProxyOracle);
}

TEST(DatasetFile, FileIo) {
  const auto path = (std::filesystem::temp_directory_path() / "lightbox_dataset_io.csv").string();
  const auto ds = small_configs();
  save_dataset(ds, path);
  EXPECT_EQ(load_dataset(path).size(), ds.size());
  std::filesystem::remove(path);
  try {
    load_dataset(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(DatasetFile, RejectsMalformedInput) {
  auto text = format_dataset(small_configs());
  EXPECT_THROW(parse_dataset("id,orientation\n0,S\n"), Error);
  auto bad_cols = text + "99,S,5\n";
  EXPECT_NE(error_text([&] { parse_dataset(bad_cols); }).find("columns"), std::string::npos);
  auto dup = text + text.substr(text.rfind("\n0,") + 1);
  EXPECT_NE(error_text([&] { parse_dataset(dup); }).find("duplicate id"), std::string::npos);
  auto bad_token = text;
  bad_token.replace(bad_token.find(",S,"), 3, ",Q,");
  EXPECT_THROW(parse_dataset(bad_token), Error);
}

TEST(ProxyLabels, DeterministicAndThreadIndependent) {
  const auto configs = small_configs();
  auto one = fast_options();
  auto many = fast_options();
  many.threads = 3;
  const auto a = label_proxy(configs, one);
  const auto b = label_proxy(configs, many);
  EXPECT_EQ(format_dataset(a), format_dataset(b));
  for (const auto& row : a.rows) EXPECT_TRUE(in_unit_interval(row.metrics));
  auto other = fast_options();
  other.seed = 7;
  EXPECT_NE(format_dataset(label_proxy(configs, other)), format_dataset(a));
}

TEST(ProxyLabels, ViewColumnsAreGeometric) {
  const auto configs = small_configs();
  const auto labeled = label_proxy(configs, fast_options());
  for (const auto& row : labeled.rows) {
    const auto v = view_components(row.config, GridParams{});
    for (auto m : {Metric::ViewRange, Metric::ViewDepth, Metric::ViewFactor}) {
      EXPECT_EQ(row.metrics[index(m)], v[index(m)]);
    }
  }
}

std::string label_file(const Dataset& ds, double fill = 0.5) {
  std::ostringstream out;
  out << "# engine: test\nid";
  for (auto n : kMetricNames) out << ',' << n;
  out << '\n';
  for (const auto& r : ds.rows) {
    out << r.id;
    for (std::size_t k = 0; k < kMetricCount; ++k) out << ',' << fill;
    out << '\n';
  }
  return out.str();
}

TEST(Ingest, AcceptsCompleteLabels) {
  const auto configs = small_configs();
  const auto ds = label_ingest(configs, label_file(configs, 0.25), fast_options());
  EXPECT_EQ(ds.meta.provenance, Provenance::Ingested);
  for (const auto& row : ds.rows) {
    EXPECT_EQ(row.metrics[index(Metric::Udi)], 0.25);
    EXPECT_EQ(row.metrics[index(Metric::ViewDepth)], view_components(row.config, {})[index(Metric::ViewDepth)]);
  }
}

TEST(Ingest, NamesMissingAndRejectedRows) {
  const auto configs = small_configs();
  auto text = label_file(configs);
  const auto pos = text.find("\n3,");
  auto missing = text;
  missing.erase(pos + 1, missing.find('\n', pos + 1) - pos);
  EXPECT_NE(error_text([&] { label_ingest(configs, missing, fast_options()); }).find("missing configs: 3"),
            std::string::npos);

  auto out_of_range = text;
  out_of_range.replace(pos + 1, 6, "3,1.5,");
  EXPECT_NE(error_text([&] { label_ingest(configs, out_of_range, fast_options()); }).find("rejected row for id 3"),
            std::string::npos);

  EXPECT_NE(error_text([&] { label_ingest(configs, text + "3,0,0,0,0,0,0,0,0\n", fast_options()); })
                .find("duplicate id 3"),
            std::string::npos);
  EXPECT_NE(error_text([&] { label_ingest(configs, text + "999,0,0,0,0,0,0,0,0\n", fast_options()); })
                .find("unknown config ids: 999"),
            std::string::npos);
  EXPECT_NE(error_text([&] { label_ingest(configs, "id,udi\n", fast_options()); }).find("header"), std::string::npos);
}

TEST(SelectRows, KeepsOrderAndChecksRange) {
  const auto ds = small_configs();
  const auto sub = select_rows(ds, {5, 1, 9});
  ASSERT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub.rows[0].id, 5u);
  EXPECT_EQ(sub.rows[2].id, 9u);
  EXPECT_THROW(select_rows(ds, {100}), Error);
}

}  // namespace
}  // namespace lightbox
