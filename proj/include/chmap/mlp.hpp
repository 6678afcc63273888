// SPDX-License-Identifier: Apache-2.0
//
// chmap: channel mapping in space and frequency for distributed massive MIMO
// Copyright (C) 2026 The chmap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CHMAP_MLP_HPP
#define CHMAP_MLP_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace chmap
{

enum class activation : std::uint8_t
{
    identity = 0,
    relu = 1,
};

struct layer_spec
{
    std::size_t input_dim = 0;
    std::size_t output_dim = 0;
    activation act = activation::relu;
};

struct dense_layer
{
    Eigen::MatrixXd weight; // output_dim x input_dim
    Eigen::VectorXd bias;   // output_dim
    activation act = activation::relu;
};

struct mlp_model
{
    std::vector<dense_layer> layers;

    std::size_t input_dim() const { return layers.empty() ? 0 : static_cast<std::size_t>(layers.front().weight.cols()); }
    std::size_t output_dim() const { return layers.empty() ? 0 : static_cast<std::size_t>(layers.back().weight.rows()); }
    std::size_t parameter_count() const;
    std::vector<layer_spec> specs() const;
};

// Hidden widths io/8, io/2, io/2, io/4: 1024, 4096, 4096, 2048 for io = 8192.
std::vector<std::size_t> scaled_hidden_widths(std::size_t io_dim);

// ReLU hidden layers of the given widths followed by an identity output layer.
std::vector<layer_spec> make_architecture(std::size_t io_dim, std::span<const std::size_t> hidden);

// He-uniform weights in [-sqrt(6 / fan_in), sqrt(6 / fan_in)], zero biases.
// Throws incompatible_dims if consecutive specs do not chain.
mlp_model init_model(std::span<const layer_spec> specs, std::uint64_t seed);

// Throws dimension_mismatch.
Eigen::VectorXd forward(const mlp_model &model, const Eigen::VectorXd &x);
// One sample per column.
Eigen::MatrixXd forward_batch(const mlp_model &model, const Eigen::MatrixXd &x);

// 0.5 * ||y_out - y_des||^2 / ||y_des||^2. Throws zero_target, dimension_mismatch.
double nmse_loss(std::span<const double> y_out, std::span<const double> y_des);

struct gradients
{
    std::vector<Eigen::MatrixXd> weight;
    std::vector<Eigen::VectorXd> bias;

    static gradients zeros_like(const mlp_model &model);
};

// Mean per-sample NMSE over the columns plus 0.5 * weight_decay * sum ||W||^2.
double batch_loss(const mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y_des,
                  double weight_decay);

// Exact gradient of batch_loss. The ReLU derivative at zero is zero.
gradients backward_batch(const mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y_des,
                         double weight_decay);

gradients backward(const mlp_model &model, const Eigen::VectorXd &x, const Eigen::VectorXd &y_des,
                   double weight_decay);

struct train_config
{
    double learning_rate = 1e-3;
    double weight_decay = 1e-4;
    std::size_t epochs = 17;
    std::size_t batch_size = 128;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct adam_state
{
    std::vector<Eigen::MatrixXd> m_weight, v_weight;
    std::vector<Eigen::VectorXd> m_bias, v_bias;
    std::uint64_t step = 0;

    static adam_state for_model(const mlp_model &model);
};

// Bias-corrected Adam. L2 decay is expected to be folded into `grads` already.
void adam_step(mlp_model &model, const gradients &grads, adam_state &state, const train_config &config);

struct epoch_record
{
    std::size_t epoch = 0;
    double mean_loss = 0.0; // mean per-sample NMSE seen during the epoch
    double objective = 0.0; // mean_loss plus the L2 term at epoch end
    double wall_seconds = 0.0;
};

using epoch_callback = std::function<void(const epoch_record &)>;

// Mini-batch Adam with a fresh shuffle of the columns every epoch.
std::vector<epoch_record> train(mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y,
                                const train_config &config, const epoch_callback &on_epoch = {});

inline Eigen::MatrixXd predict(const mlp_model &model, const Eigen::MatrixXd &x) { return forward_batch(model, x); }

} // namespace chmap

#endif
