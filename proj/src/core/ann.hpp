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

// Single-hidden-layer feedforward network trained by mini-batch
// backpropagation on a mean-squared-error loss.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lightbox::ann {

enum class Activation { Identity, Relu, Sigmoid, Tanh };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

double activate(Activation a, double z);
/// Derivative expressed through the pre-activation z and the output y = f(z).
double activation_derivative(Activation a, double z, double y);

/// Parameters live in one flat vector: [W1 | b1 | W2 | b2], row-major
/// weights (W1 is hidden x inputs, W2 is outputs x hidden).
struct Network {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::size_t outputs = 0;
  Activation hidden_activation = Activation::Relu;
  Activation output_activation = Activation::Sigmoid;
  std::vector<double> params;

  static Network zeros(std::size_t inputs, std::size_t hidden, std::size_t outputs,
                       Activation hidden_activation = Activation::Relu,
                       Activation output_activation = Activation::Sigmoid);

  /// Weights ~ U(-l, l) with l = sqrt(3 * gain / fan_in), gain 2 for
  /// rectifier layers and 1 otherwise; biases zero.
  static Network initialized(std::size_t inputs, std::size_t hidden, std::size_t outputs, std::uint64_t seed,
                             Activation hidden_activation = Activation::Relu,
                             Activation output_activation = Activation::Sigmoid);

  std::size_t parameter_count() const { return hidden * inputs + hidden + outputs * hidden + outputs; }
  std::size_t b1_offset() const { return hidden * inputs; }
  std::size_t w2_offset() const { return b1_offset() + hidden; }
  std::size_t b2_offset() const { return w2_offset() + outputs * hidden; }

  double w1(std::size_t h, std::size_t i) const { return params[h * inputs + i]; }
  double b1(std::size_t h) const { return params[b1_offset() + h]; }
  double w2(std::size_t k, std::size_t h) const { return params[w2_offset() + k * hidden + h]; }
  double b2(std::size_t k) const { return params[b2_offset() + k]; }
  double& w1(std::size_t h, std::size_t i) { return params[h * inputs + i]; }
  double& b1(std::size_t h) { return params[b1_offset() + h]; }
  double& w2(std::size_t k, std::size_t h) { return params[w2_offset() + k * hidden + h]; }
  double& b2(std::size_t k) { return params[b2_offset() + k]; }

  /// Throws unless dimensions and parameter count agree and all are finite.
  void check() const;
};

std::vector<double> forward(const Network& net, std::span<const double> x);
void forward(const Network& net, std::span<const double> x, std::span<double> out);

/// Row-major samples.
struct TrainingSet {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return inputs == 0 ? 0 : x.size() / inputs; }
  void add(std::span<const double> input, std::span<const double> target);
  std::span<const double> input(std::size_t i) const { return {x.data() + i * inputs, inputs}; }
  std::span<const double> target(std::size_t i) const { return {y.data() + i * outputs, outputs}; }
};

/// mean over rows and outputs of (y - t)^2
double batch_loss(const Network& net, const TrainingSet& data, std::span<const std::size_t> rows);
double dataset_loss(const Network& net, const TrainingSet& data);

struct Gradient {
  std::vector<double> values;  // same layout as Network::params
  double loss = 0.0;
};

Gradient backward(const Network& net, const TrainingSet& data, std::span<const std::size_t> rows);

enum class Optimizer { SgdMomentum, Adam };

std::string_view to_string(Optimizer o);
Optimizer parse_optimizer(std::string_view name);

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t batch_size = 10;
  std::size_t hidden = 40;
  double learning_rate = 0.01;
  double momentum = 0.9;
  Optimizer optimizer = Optimizer::SgdMomentum;
  std::uint64_t seed = 42;
  double train_fraction = 0.8;
  Activation hidden_activation = Activation::Relu;
  Activation output_activation = Activation::Sigmoid;

  void check() const;
};

struct TrainResult {
  Network net;
  std::vector<double> loss_history;  // training-set loss after each epoch
};

TrainResult train(const TrainingSet& data, const TrainConfig& config);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded permutation of 0..n-1.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

/// Seeded shuffle, then the first floor(n * fraction) go to train.
Split split_indices(std::size_t n, double fraction, std::uint64_t seed);

double mae(std::span<const double> predicted, std::span<const double> target);
double mse(std::span<const double> predicted, std::span<const double> target);

}  // namespace lightbox::ann
