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
#include "ann.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "error.hpp"

namespace lightbox::ann {

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

// Scratch buffers for one sample pass.
struct Activations {
  std::vector<double> z1, a1, z2, y;
  explicit Activations(const Network& n) : z1(n.hidden), a1(n.hidden), z2(n.outputs), y(n.outputs) {}
};

void run(const Network& n, std::span<const double> x, Activations& act) {
  for (std::size_t h = 0; h < n.hidden; ++h) {
    double z = n.b1(h);
    const double* w = n.params.data() + h * n.inputs;
    for (std::size_t i = 0; i < n.inputs; ++i) z += w[i] * x[i];
    act.z1[h] = z;
    act.a1[h] = activate(n.hidden_activation, z);
  }
  for (std::size_t k = 0; k < n.outputs; ++k) {
    double z = n.b2(k);
    const double* w = n.params.data() + n.w2_offset() + k * n.hidden;
    for (std::size_t h = 0; h < n.hidden; ++h) z += w[h] * act.a1[h];
    act.z2[k] = z;
    act.y[k] = activate(n.output_activation, z);
  }
}

class Stepper {
 public:
  Stepper(const TrainConfig& c, std::size_t n) : config_(c), m_(n, 0.0), v_(n, 0.0) {}

  void step(std::vector<double>& params, const std::vector<double>& g) {
    ++t_;
    if (config_.optimizer == Optimizer::SgdMomentum) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = config_.momentum * m_[i] - config_.learning_rate * g[i];
        params[i] += m_[i];
      }
      return;
    }
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * g[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * g[i] * g[i];
      params[i] -= config_.learning_rate * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEps);
    }
  }

 private:
  TrainConfig config_;
  std::vector<double> m_, v_;
  std::size_t t_ = 0;
};

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return rows;
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
  }
  return "?";
}

Activation parse_activation(std::string_view name) {
  if (name == "identity" || name == "linear") return Activation::Identity;
  if (name == "relu") return Activation::Relu;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "tanh") return Activation::Tanh;
  fail(ErrorKind::Validation, "unknown activation '" + std::string(name) + "'");
}

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Identity: return z;
    case Activation::Relu: return z > 0.0 ? z : 0.0;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Tanh: return std::tanh(z);
  }
  return z;
}

double activation_derivative(Activation a, double z, double y) {
  switch (a) {
    case Activation::Identity: return 1.0;
    case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: return y * (1.0 - y);
    case Activation::Tanh: return 1.0 - y * y;
  }
  return 1.0;
}

Network Network::zeros(std::size_t inputs, std::size_t hidden, std::size_t outputs, Activation ha, Activation oa) {
  if (inputs == 0 || hidden == 0 || outputs == 0) fail(ErrorKind::Validation, "network dimensions must be >= 1");
  Network n;
  n.inputs = inputs;
  n.hidden = hidden;
  n.outputs = outputs;
  n.hidden_activation = ha;
  n.output_activation = oa;
  n.params.assign(n.parameter_count(), 0.0);
  return n;
}

Network Network::initialized(std::size_t inputs, std::size_t hidden, std::size_t outputs, std::uint64_t seed,
                             Activation ha, Activation oa) {
  Network n = zeros(inputs, hidden, outputs, ha, oa);
  std::mt19937_64 rng(seed);
  auto limit = [](Activation a, std::size_t fan_in) {
    const double gain = a == Activation::Relu ? 2.0 : 1.0;
    return std::sqrt(3.0 * gain / static_cast<double>(fan_in));
  };
  const double l1 = limit(ha, inputs);
  for (std::size_t i = 0; i < n.b1_offset(); ++i) n.params[i] = l1 * (2.0 * unit_uniform(rng) - 1.0);
  const double l2 = limit(oa, hidden);
  for (std::size_t i = n.w2_offset(); i < n.b2_offset(); ++i) n.params[i] = l2 * (2.0 * unit_uniform(rng) - 1.0);
  return n;
}

void Network::check() const {
  if (inputs == 0 || hidden == 0 || outputs == 0) fail(ErrorKind::Validation, "network dimensions must be >= 1");
  if (params.size() != parameter_count()) fail(ErrorKind::Validation, "network parameter count mismatch");
  for (double p : params) {
    if (!std::isfinite(p)) fail(ErrorKind::Validation, "network has non-finite parameters");
  }
}

void forward(const Network& net, std::span<const double> x, std::span<double> out) {
  if (x.size() != net.inputs) {
    fail(ErrorKind::InvalidArgument, "input has " + std::to_string(x.size()) + " features, network expects " +
                                         std::to_string(net.inputs));
  }
  if (out.size() != net.outputs) fail(ErrorKind::InvalidArgument, "output buffer size mismatch");
  Activations act(net);
  run(net, x, act);
  std::copy(act.y.begin(), act.y.end(), out.begin());
}

std::vector<double> forward(const Network& net, std::span<const double> x) {
  std::vector<double> y(net.outputs);
  forward(net, x, y);
  return y;
}

void TrainingSet::add(std::span<const double> input, std::span<const double> target) {
  if (input.size() != inputs || target.size() != outputs) fail(ErrorKind::InvalidArgument, "sample size mismatch");
  x.insert(x.end(), input.begin(), input.end());
  y.insert(y.end(), target.begin(), target.end());
}

double batch_loss(const Network& net, const TrainingSet& data, std::span<const std::size_t> rows) {
  if (rows.empty()) return 0.0;
  Activations act(net);
  double sum = 0.0;
  for (auto r : rows) {
    run(net, data.input(r), act);
    const auto t = data.target(r);
    for (std::size_t k = 0; k < net.outputs; ++k) {
      const double e = act.y[k] - t[k];
      sum += e * e;
    }
  }
  return sum / static_cast<double>(rows.size() * net.outputs);
}

double dataset_loss(const Network& net, const TrainingSet& data) {
  const auto rows = all_rows(data.size());
  return batch_loss(net, data, rows);
}

Gradient backward(const Network& net, const TrainingSet& data, std::span<const std::size_t> rows) {
  if (rows.empty()) fail(ErrorKind::InvalidArgument, "backward needs a nonempty batch");
  if (data.inputs != net.inputs || data.outputs != net.outputs) {
    fail(ErrorKind::InvalidArgument, "training data does not match network dimensions");
  }
  Gradient g;
  g.values.assign(net.parameter_count(), 0.0);
  Activations act(net);
  std::vector<double> delta2(net.outputs), delta1(net.hidden);
  const double scale = 2.0 / static_cast<double>(rows.size() * net.outputs);
  double sum = 0.0;
  for (auto r : rows) {
    const auto x = data.input(r);
    const auto t = data.target(r);
    run(net, x, act);
    for (std::size_t k = 0; k < net.outputs; ++k) {
      const double e = act.y[k] - t[k];
      sum += e * e;
      delta2[k] = scale * e * activation_derivative(net.output_activation, act.z2[k], act.y[k]);
    }
    for (std::size_t h = 0; h < net.hidden; ++h) {
      double back = 0.0;
      for (std::size_t k = 0; k < net.outputs; ++k) back += net.w2(k, h) * delta2[k];
      delta1[h] = back * activation_derivative(net.hidden_activation, act.z1[h], act.a1[h]);
    }
    for (std::size_t k = 0; k < net.outputs; ++k) {
      double* gw = g.values.data() + net.w2_offset() + k * net.hidden;
      for (std::size_t h = 0; h < net.hidden; ++h) gw[h] += delta2[k] * act.a1[h];
      g.values[net.b2_offset() + k] += delta2[k];
    }
    for (std::size_t h = 0; h < net.hidden; ++h) {
      double* gw = g.values.data() + h * net.inputs;
      for (std::size_t i = 0; i < net.inputs; ++i) gw[i] += delta1[h] * x[i];
      g.values[net.b1_offset() + h] += delta1[h];
    }
  }
  g.loss = sum / static_cast<double>(rows.size() * net.outputs);
  return g;
}

std::string_view to_string(Optimizer o) { return o == Optimizer::SgdMomentum ? "sgd" : "adam"; }

Optimizer parse_optimizer(std::string_view name) {
  if (name == "sgd" || name == "sgd-momentum") return Optimizer::SgdMomentum;
  if (name == "adam") return Optimizer::Adam;
  fail(ErrorKind::Validation, "unknown optimizer '" + std::string(name) + "' (expected sgd or adam)");
}

void TrainConfig::check() const {
  if (epochs < 1) fail(ErrorKind::Validation, "epochs must be >= 1");
  if (batch_size < 1) fail(ErrorKind::Validation, "batch size must be >= 1");
  if (hidden < 1) fail(ErrorKind::Validation, "hidden neurons must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) fail(ErrorKind::Validation, "train fraction must lie in (0,1)");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail(ErrorKind::Validation, "learning rate must be > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) fail(ErrorKind::Validation, "momentum must lie in [0,1)");
}

TrainResult train(const TrainingSet& data, const TrainConfig& cfg) {
  cfg.check();
  if (data.size() == 0) fail(ErrorKind::Validation, "cannot train on an empty dataset");
  TrainResult result;
  result.net = Network::initialized(data.inputs, cfg.hidden, data.outputs, cfg.seed, cfg.hidden_activation,
                                    cfg.output_activation);
  // Batch order draws from a stream separate from initialization.
  std::mt19937_64 rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  Stepper stepper(cfg, result.net.parameter_count());
  auto order = all_rows(data.size());
  result.loss_history.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t len = std::min(cfg.batch_size, order.size() - start);
      const auto g = backward(result.net, data, std::span<const std::size_t>(order.data() + start, len));
      stepper.step(result.net.params, g.values);
    }
    result.loss_history.push_back(dataset_loss(result.net, data));
  }
  result.net.check();
  return result;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  auto order = all_rows(n);
  std::mt19937_64 rng(seed);
  shuffle(order, rng);
  return order;
}

Split split_indices(std::size_t n, double fraction, std::uint64_t seed) {
  if (n < 2) fail(ErrorKind::Validation, "need at least 2 samples to split");
  if (!(fraction > 0.0 && fraction < 1.0)) fail(ErrorKind::Validation, "split fraction must lie in (0,1)");
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fraction));
  if (n_train == 0 || n_train == n) fail(ErrorKind::Validation, "split would leave one side empty");
  const auto order = shuffled_indices(n, seed);
  Split s;
  s.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return s;
}

double mae(std::span<const double> p, std::span<const double> t) {
  if (p.size() != t.size()) fail(ErrorKind::InvalidArgument, "mae: length mismatch");
  if (p.empty()) fail(ErrorKind::InvalidArgument, "mae: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - t[i]);
  return s / static_cast<double>(p.size());
}

double mse(std::span<const double> p, std::span<const double> t) {
  if (p.size() != t.size()) fail(ErrorKind::InvalidArgument, "mse: length mismatch");
  if (p.empty()) fail(ErrorKind::InvalidArgument, "mse: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - t[i]) * (p[i] - t[i]);
  return s / static_cast<double>(p.size());
}

}  // namespace lightbox::ann
