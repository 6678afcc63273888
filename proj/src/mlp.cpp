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

#include "chmap/mlp.hpp"

#include "chmap/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace chmap
{

namespace
{

void check_input(const mlp_model &model, Eigen::Index rows)
{
    if (model.layers.empty())
        throw dimension_mismatch("model has no layers");
    if (static_cast<std::size_t>(rows) != model.input_dim())
        throw dimension_mismatch("input has " + std::to_string(rows) + " entries, model expects " +
                                 std::to_string(model.input_dim()));
}

void apply_activation(Eigen::MatrixXd &z, activation act)
{
    if (act == activation::relu)
        z = z.cwiseMax(0.0);
}

double weight_penalty(const mlp_model &model)
{
    double sum = 0.0;
    for (const auto &l : model.layers)
        sum += l.weight.squaredNorm();
    return sum;
}

} // namespace

std::size_t mlp_model::parameter_count() const
{
    std::size_t n = 0;
    for (const auto &l : layers)
        n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    return n;
}

std::vector<layer_spec> mlp_model::specs() const
{
    std::vector<layer_spec> out;
    for (const auto &l : layers)
        out.push_back({static_cast<std::size_t>(l.weight.cols()), static_cast<std::size_t>(l.weight.rows()), l.act});
    return out;
}

std::vector<std::size_t> scaled_hidden_widths(std::size_t io_dim)
{
    const auto w = [io_dim](std::size_t div) { return std::max<std::size_t>(1, io_dim / div); };
    return {w(8), w(2), w(2), w(4)};
}

std::vector<layer_spec> make_architecture(std::size_t io_dim, std::span<const std::size_t> hidden)
{
    std::vector<layer_spec> specs;
    std::size_t in = io_dim;
    for (auto width : hidden)
    {
        specs.push_back({in, width, activation::relu});
        in = width;
    }
    specs.push_back({in, io_dim, activation::identity});
    return specs;
}

mlp_model init_model(std::span<const layer_spec> specs, std::uint64_t seed)
{
    if (specs.empty())
        throw incompatible_dims("architecture has no layers");
    for (std::size_t i = 0; i < specs.size(); ++i)
    {
        if (specs[i].input_dim == 0 || specs[i].output_dim == 0)
            throw incompatible_dims("layer " + std::to_string(i) + " has a zero dimension");
        if (i > 0 && specs[i].input_dim != specs[i - 1].output_dim)
            throw incompatible_dims("layer " + std::to_string(i) + " expects " + std::to_string(specs[i].input_dim) +
                                    " inputs but layer " + std::to_string(i - 1) + " produces " +
                                    std::to_string(specs[i - 1].output_dim));
    }
    if (specs.back().act != activation::identity)
        throw invalid_argument("the output layer must use the identity activation");

    std::mt19937_64 rng(seed);
    mlp_model model;
    for (const auto &s : specs)
    {
        dense_layer l;
        l.act = s.act;
        l.weight.resize(static_cast<Eigen::Index>(s.output_dim), static_cast<Eigen::Index>(s.input_dim));
        l.bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.output_dim));
        const double bound = std::sqrt(6.0 / static_cast<double>(s.input_dim));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c)
                l.weight(r, c) = dist(rng);
        model.layers.push_back(std::move(l));
    }
    return model;
}

Eigen::MatrixXd forward_batch(const mlp_model &model, const Eigen::MatrixXd &x)
{
    check_input(model, x.rows());
    Eigen::MatrixXd a = x;
    for (const auto &l : model.layers)
    {
        Eigen::MatrixXd z = l.weight * a;
        z.colwise() += l.bias;
        apply_activation(z, l.act);
        a = std::move(z);
    }
    return a;
}

Eigen::VectorXd forward(const mlp_model &model, const Eigen::VectorXd &x)
{
    return forward_batch(model, x);
}

double nmse_loss(std::span<const double> y_out, std::span<const double> y_des)
{
    if (y_out.size() != y_des.size())
        throw dimension_mismatch("nmse_loss: output has " + std::to_string(y_out.size()) + " entries, target " +
                                 std::to_string(y_des.size()));
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < y_out.size(); ++i)
    {
        const double d = y_out[i] - y_des[i];
        err += d * d;
        ref += y_des[i] * y_des[i];
    }
    if (!(ref > 0.0))
        throw zero_target("nmse_loss: target vector is zero");
    return 0.5 * err / ref;
}

gradients gradients::zeros_like(const mlp_model &model)
{
    gradients g;
    for (const auto &l : model.layers)
    {
        g.weight.push_back(Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()));
        g.bias.push_back(Eigen::VectorXd::Zero(l.bias.size()));
    }
    return g;
}

double batch_loss(const mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y_des,
                  double weight_decay)
{
    const Eigen::MatrixXd y = forward_batch(model, x);
    if (y.rows() != y_des.rows() || y.cols() != y_des.cols())
        throw dimension_mismatch("batch_loss: target shape does not match the model output");
    double sum = 0.0;
    for (Eigen::Index j = 0; j < y.cols(); ++j)
        sum += nmse_loss({y.col(j).data(), static_cast<std::size_t>(y.rows())},
                         {y_des.col(j).data(), static_cast<std::size_t>(y_des.rows())});
    return sum / static_cast<double>(y.cols()) + 0.5 * weight_decay * weight_penalty(model);
}

namespace
{

// Gradient of batch_loss; also reports the mean data term of the batch.
gradients backprop(const mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y_des,
                   double weight_decay, double &mean_loss)
{
    check_input(model, x.rows());
    if (static_cast<std::size_t>(y_des.rows()) != model.output_dim() || y_des.cols() != x.cols())
        throw dimension_mismatch("backward: target shape does not match the model output");
    if (x.cols() == 0)
        throw dimension_mismatch("backward: empty batch");

    // activations[i] is the input of layer i; the last entry is the output.
    std::vector<Eigen::MatrixXd> activations;
    activations.reserve(model.layers.size() + 1);
    activations.push_back(x);
    for (const auto &l : model.layers)
    {
        Eigen::MatrixXd z = l.weight * activations.back();
        z.colwise() += l.bias;
        apply_activation(z, l.act);
        activations.push_back(std::move(z));
    }

    const double batch = static_cast<double>(x.cols());
    Eigen::MatrixXd delta = activations.back() - y_des;
    double loss_sum = 0.0;
    for (Eigen::Index j = 0; j < delta.cols(); ++j)
    {
        const double ref = y_des.col(j).squaredNorm();
        if (!(ref > 0.0))
            throw zero_target("backward: target column " + std::to_string(j) + " is zero");
        loss_sum += 0.5 * delta.col(j).squaredNorm() / ref;
        delta.col(j) /= ref * batch;
    }
    mean_loss = loss_sum / batch;

    gradients g = gradients::zeros_like(model);
    for (std::size_t i = model.layers.size(); i-- > 0;)
    {
        const auto &l = model.layers[i];
        if (l.act == activation::relu)
            delta = delta.cwiseProduct((activations[i + 1].array() > 0.0).cast<double>().matrix());
        g.weight[i].noalias() = delta * activations[i].transpose();
        g.weight[i] += weight_decay * l.weight;
        g.bias[i] = delta.rowwise().sum();
        if (i > 0)
            delta = l.weight.transpose() * delta;
    }
    return g;
}

} // namespace

gradients backward_batch(const mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y_des,
                         double weight_decay)
{
    double unused = 0.0;
    return backprop(model, x, y_des, weight_decay, unused);
}

gradients backward(const mlp_model &model, const Eigen::VectorXd &x, const Eigen::VectorXd &y_des,
                   double weight_decay)
{
    return backward_batch(model, x, y_des, weight_decay);
}

void train_config::validate() const
{
    if (!(learning_rate > 0.0))
        throw invalid_argument("learning_rate must be positive");
    if (!(weight_decay >= 0.0))
        throw invalid_argument("weight_decay must be non-negative");
    if (batch_size < 1)
        throw invalid_argument("batch_size must be at least 1");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0))
        throw invalid_argument("invalid Adam hyper-parameters");
}

adam_state adam_state::for_model(const mlp_model &model)
{
    const gradients z = gradients::zeros_like(model);
    adam_state s;
    s.m_weight = z.weight;
    s.v_weight = z.weight;
    s.m_bias = z.bias;
    s.v_bias = z.bias;
    return s;
}

void adam_step(mlp_model &model, const gradients &grads, adam_state &state, const train_config &config)
{
    if (grads.weight.size() != model.layers.size() || state.m_weight.size() != model.layers.size())
        throw dimension_mismatch("adam_step: gradient or state does not match the model");

    ++state.step;
    const double t = static_cast<double>(state.step);
    const double bc1 = 1.0 - std::pow(config.beta1, t);
    const double bc2 = 1.0 - std::pow(config.beta2, t);

    for (std::size_t i = 0; i < model.layers.size(); ++i)
    {
        auto &l = model.layers[i];
        if (grads.weight[i].rows() != l.weight.rows() || grads.weight[i].cols() != l.weight.cols() ||
            grads.bias[i].size() != l.bias.size())
            throw dimension_mismatch("adam_step: gradient shape mismatch at layer " + std::to_string(i));

        auto update = [&](auto &theta, const auto &g, auto &m, auto &v) {
            m = config.beta1 * m + (1.0 - config.beta1) * g;
            v = config.beta2 * v + (1.0 - config.beta2) * g.cwiseProduct(g);
            theta.array() -= config.learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + config.epsilon);
        };
        update(l.weight, grads.weight[i], state.m_weight[i], state.v_weight[i]);
        update(l.bias, grads.bias[i], state.m_bias[i], state.v_bias[i]);
    }
}

std::vector<epoch_record> train(mlp_model &model, const Eigen::MatrixXd &x, const Eigen::MatrixXd &y,
                                const train_config &config, const epoch_callback &on_epoch)
{
    config.validate();
    check_input(model, x.rows());
    if (static_cast<std::size_t>(y.rows()) != model.output_dim() || y.cols() != x.cols())
        throw dimension_mismatch("train: target shape does not match the model output");
    if (x.cols() == 0)
        throw empty_dataset("train: no training samples");

    const auto n = static_cast<std::size_t>(x.cols());
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::mt19937_64 rng(config.seed);
    adam_state state = adam_state::for_model(model);

    std::vector<epoch_record> history;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch)
    {
        std::shuffle(order.begin(), order.end(), rng);
        double loss_sum = 0.0;
        for (std::size_t first = 0; first < n; first += config.batch_size)
        {
            const std::size_t count = std::min(config.batch_size, n - first);
            const std::vector<Eigen::Index> idx(order.begin() + static_cast<std::ptrdiff_t>(first),
                                                order.begin() + static_cast<std::ptrdiff_t>(first + count));
            const Eigen::MatrixXd xb = x(Eigen::all, idx);
            const Eigen::MatrixXd yb = y(Eigen::all, idx);
            double batch_mean = 0.0;
            const gradients g = backprop(model, xb, yb, config.weight_decay, batch_mean);
            loss_sum += static_cast<double>(count) * batch_mean;
            adam_step(model, g, state, config);
        }
        epoch_record rec;
        rec.epoch = epoch;
        rec.mean_loss = loss_sum / static_cast<double>(n);
        rec.objective = rec.mean_loss + 0.5 * config.weight_decay * weight_penalty(model);
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        history.push_back(rec);
        if (on_epoch)
            on_epoch(rec);
    }
    return history;
}

} // namespace chmap
