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
#include "model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "error.hpp"
#include "textio.hpp"

namespace lightbox {

namespace {

constexpr std::string_view kMagic = "lightbox-model 1";

class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(text::split_lines(text)) {}

  // Next non-empty line split on whitespace.
  std::vector<std::string> tokens(std::string_view what) {
    while (pos_ < lines_.size() && text::trim(lines_[pos_]).empty()) ++pos_;
    if (pos_ >= lines_.size()) fail(ErrorKind::Validation, "model file truncated, expected " + std::string(what));
    std::istringstream in(lines_[pos_++]);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
  }

  std::vector<std::string> expect(std::string_view key) {
    auto tokens = this->tokens("'" + std::string(key) + "'");
    if (tokens.empty() || tokens[0] != key) {
      fail(ErrorKind::Validation, "model file line " + std::to_string(pos_) + ": expected '" + std::string(key) + "'");
    }
    return tokens;
  }

  std::string one(std::string_view key) {
    auto t = expect(key);
    if (t.size() != 2) fail(ErrorKind::Validation, "model file: '" + std::string(key) + "' takes one value");
    return t[1];
  }

  double number(std::string_view key) { return text::parse_double(one(key), key); }
  std::size_t count(std::string_view key) {
    const auto v = text::parse_int(one(key), key);
    if (v < 0) fail(ErrorKind::Validation, "model file: negative '" + std::string(key) + "'");
    return static_cast<std::size_t>(v);
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

Range read_bounds(Reader& r, std::string_view name) {
  auto t = r.expect("bounds");
  if (t.size() != 4 || t[1] != name) fail(ErrorKind::Validation, "model file: expected bounds " + std::string(name));
  return {text::parse_double(t[2], name), text::parse_double(t[3], name)};
}

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string_view metric_group(std::size_t k) {
  if (k <= index(Metric::SpatialDa)) return "daylight";
  if (k <= index(Metric::Svd)) return "glare";
  return "quality_views";
}

}  // namespace

MetricVector SurrogateModel::predict_features(std::span<const double> features) const {
  if (net.outputs != kMetricCount) fail(ErrorKind::Validation, "model does not predict the eight metrics");
  MetricVector out{};
  ann::forward(net, features, out);
  return out;
}

MetricVector SurrogateModel::predict(const RoomConfig& config, bool* clamped) const {
  validate(config);
  const auto e = encode(config, bounds);
  if (clamped) *clamped = e.clamped;
  return predict_features(e.features);
}

std::string format_model(const SurrogateModel& m) {
  std::ostringstream out;
  const auto& n = m.net;
  const auto num = [](double v) { return text::format_double(v); };
  out << kMagic << '\n';
  out << "inputs " << n.inputs << '\n';
  out << "hidden " << n.hidden << '\n';
  out << "outputs " << n.outputs << '\n';
  out << "hidden_activation " << ann::to_string(n.hidden_activation) << '\n';
  out << "output_activation " << ann::to_string(n.output_activation) << '\n';
  out << "seed " << m.train.seed << '\n';
  out << "epochs " << m.train.epochs << '\n';
  out << "batch_size " << m.train.batch_size << '\n';
  out << "learning_rate " << num(m.train.learning_rate) << '\n';
  out << "momentum " << num(m.train.momentum) << '\n';
  out << "optimizer " << ann::to_string(m.train.optimizer) << '\n';
  out << "train_fraction " << num(m.train.train_fraction) << '\n';
  out << "grid " << num(m.grid.spacing) << ' ' << num(m.grid.workplane) << ' ' << num(m.grid.wall_offset) << '\n';
  auto bounds = [&](const char* name, const Range& r) {
    out << "bounds " << name << ' ' << num(r.lo) << ' ' << num(r.hi) << '\n';
  };
  bounds("width", m.bounds.width);
  bounds("depth", m.bounds.depth);
  bounds("reflectance", m.bounds.reflectance);
  bounds("sill_height", m.bounds.sill_height);
  bounds("window_height", m.bounds.window_height);
  out << "loss_history";
  for (double v : m.loss_history) out << ' ' << num(v);
  out << '\n';
  out << "params " << n.params.size() << '\n';
  for (std::size_t i = 0; i < n.params.size(); ++i) {
    out << num(n.params[i]) << ((i % 8 == 7 || i + 1 == n.params.size()) ? '\n' : ' ');
  }
  out << "end\n";
  return out.str();
}

SurrogateModel parse_model(std::string_view input) {
  Reader r(input);
  {
    auto t = r.expect("lightbox-model");
    if (t.size() != 2 || t[1] != "1") fail(ErrorKind::Validation, "unsupported model format version");
  }
  SurrogateModel m;
  const auto inputs = r.count("inputs");
  const auto hidden = r.count("hidden");
  const auto outputs = r.count("outputs");
  const auto ha = ann::parse_activation(r.one("hidden_activation"));
  const auto oa = ann::parse_activation(r.one("output_activation"));
  m.net = ann::Network::zeros(inputs, hidden, outputs, ha, oa);
  m.train.hidden = hidden;
  m.train.hidden_activation = ha;
  m.train.output_activation = oa;
  m.train.seed = static_cast<std::uint64_t>(text::parse_int(r.one("seed"), "seed"));
  m.train.epochs = r.count("epochs");
  m.train.batch_size = r.count("batch_size");
  m.train.learning_rate = r.number("learning_rate");
  m.train.momentum = r.number("momentum");
  m.train.optimizer = ann::parse_optimizer(r.one("optimizer"));
  m.train.train_fraction = r.number("train_fraction");
  {
    auto t = r.expect("grid");
    if (t.size() != 4) fail(ErrorKind::Validation, "model file: grid takes three values");
    m.grid = {text::parse_double(t[1], "grid"), text::parse_double(t[2], "grid"), text::parse_double(t[3], "grid")};
  }
  m.bounds.width = read_bounds(r, "width");
  m.bounds.depth = read_bounds(r, "depth");
  m.bounds.reflectance = read_bounds(r, "reflectance");
  m.bounds.sill_height = read_bounds(r, "sill_height");
  m.bounds.window_height = read_bounds(r, "window_height");
  {
    auto t = r.expect("loss_history");
    for (std::size_t i = 1; i < t.size(); ++i) m.loss_history.push_back(text::parse_double(t[i], "loss_history"));
  }
  const auto count = r.count("params");
  if (count != m.net.parameter_count()) fail(ErrorKind::Validation, "model file: parameter count mismatch");
  std::size_t filled = 0;
  while (filled < count) {
    for (const auto& tok : r.tokens("parameters")) {
      if (filled == count) fail(ErrorKind::Validation, "model file: too many parameters");
      m.net.params[filled++] = text::parse_double(tok, "params");
    }
  }
  r.expect("end");
  m.net.check();
  return m;
}

void save_model(const SurrogateModel& model, const std::string& path) {
  text::write_file(path, format_model(model));
}

SurrogateModel load_model(const std::string& path) { return parse_model(text::read_file(path)); }

std::string model_digest(const SurrogateModel& model) { return text::sha256_hex(format_model(model)); }

ann::TrainingSet training_set(const Dataset& ds, const NormalizationBounds& bounds) {
  if (!ds.labeled()) fail(ErrorKind::Validation, "dataset is not labeled");
  ann::TrainingSet t;
  t.inputs = kFeatureCount;
  t.outputs = kMetricCount;
  t.x.reserve(ds.size() * kFeatureCount);
  t.y.reserve(ds.size() * kMetricCount);
  for (const auto& row : ds.rows) {
    const auto e = encode(row.config, bounds);
    t.add(e.features, row.metrics);
  }
  return t;
}

double EvalReport::mean_mae() const {
  double s = 0.0;
  for (double v : mae) s += v;
  return s / static_cast<double>(kMetricCount);
}

EvalReport evaluate_predictions(std::span<const double> predicted, std::span<const double> target) {
  if (predicted.size() != target.size() || predicted.size() % kMetricCount != 0) {
    fail(ErrorKind::InvalidArgument, "evaluation: prediction/target shape mismatch");
  }
  EvalReport r;
  r.n = predicted.size() / kMetricCount;
  if (r.n == 0) fail(ErrorKind::InvalidArgument, "evaluation: no samples");
  r.residuals.resize(predicted.size());
  std::vector<double> p(r.n), t(r.n);
  for (std::size_t k = 0; k < kMetricCount; ++k) {
    for (std::size_t i = 0; i < r.n; ++i) {
      p[i] = predicted[i * kMetricCount + k];
      t[i] = target[i * kMetricCount + k];
      r.residuals[i * kMetricCount + k] = p[i] - t[i];
      r.max_abs_residual[k] = std::max(r.max_abs_residual[k], std::abs(p[i] - t[i]));
    }
    r.mae[k] = ann::mae(p, t);
    r.mse[k] = ann::mse(p, t);
  }
  return r;
}

EvalReport evaluate(const SurrogateModel& model, const Dataset& ds) {
  if (!ds.labeled()) fail(ErrorKind::Validation, "evaluation dataset is not labeled");
  std::vector<double> pred, target;
  pred.reserve(ds.size() * kMetricCount);
  target.reserve(ds.size() * kMetricCount);
  for (const auto& row : ds.rows) {
    const auto y = model.predict(row.config);
    pred.insert(pred.end(), y.begin(), y.end());
    target.insert(target.end(), row.metrics.begin(), row.metrics.end());
  }
  return evaluate_predictions(pred, target);
}

std::string format_report(const EvalReport& r) {
  std::ostringstream out;
  out << "# samples: " << r.n << '\n';
  out << "group,metric,mae,mse,max_abs_residual,reference_mae,reference_mse\n";
  out << std::fixed;
  for (std::size_t k = 0; k < kMetricCount; ++k) {
    out << metric_group(k) << ',' << metric_name(k) << ',' << std::setprecision(6) << r.mae[k] << ','
        << std::setprecision(7) << r.mse[k] << ',' << std::setprecision(6) << r.max_abs_residual[k] << ','
        << text::format_double(kReferenceErrors[k].mae) << ',' << text::format_double(kReferenceErrors[k].mse)
        << '\n';
  }
  out << "# mean_mae: " << std::setprecision(6) << r.mean_mae() << '\n';
  return out.str();
}

std::string format_residual_distribution(const EvalReport& r, std::size_t metric) {
  std::vector<double> abs_res;
  abs_res.reserve(r.n);
  for (std::size_t i = 0; i < r.n; ++i) abs_res.push_back(std::abs(r.residual(i, metric)));
  std::sort(abs_res.begin(), abs_res.end());
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << metric_name(metric) << " |residual|: min " << quantile(abs_res, 0.0) << ", p25 " << quantile(abs_res, 0.25)
      << ", median " << quantile(abs_res, 0.5) << ", p75 " << quantile(abs_res, 0.75) << ", p95 "
      << quantile(abs_res, 0.95) << ", max " << quantile(abs_res, 1.0) << '\n';
  constexpr std::array<double, 6> kEdges{0.01, 0.02, 0.05, 0.1, 0.2, 1.0};
  std::array<std::size_t, kEdges.size()> bins{};
  for (double v : abs_res) {
    std::size_t b = 0;
    while (b + 1 < kEdges.size() && v > kEdges[b]) ++b;
    ++bins[b];
  }
  double lo = 0.0;
  for (std::size_t b = 0; b < kEdges.size(); ++b) {
    out << "  (" << std::setprecision(2) << lo << ", " << kEdges[b] << "]: " << bins[b] << '\n';
    lo = kEdges[b];
  }
  return out.str();
}

FitResult fit(const Dataset& ds, const ann::TrainConfig& config) {
  config.check();
  if (!ds.labeled()) fail(ErrorKind::Validation, "training dataset is not labeled");
  if (ds.size() == 0) fail(ErrorKind::Validation, "cannot train on an empty dataset");
  FitResult f;
  f.split = ann::split_indices(ds.size(), config.train_fraction, config.seed);
  const auto train_rows = select_rows(ds, f.split.train);
  const auto test_rows = select_rows(ds, f.split.test);
  auto trained = ann::train(training_set(train_rows, ds.meta.bounds), config);
  f.model.net = std::move(trained.net);
  f.model.loss_history = std::move(trained.loss_history);
  f.model.bounds = ds.meta.bounds;
  f.model.grid = ds.meta.grid;
  f.model.train = config;
  f.holdout = evaluate(f.model, test_rows);
  return f;
}

}  // namespace lightbox
