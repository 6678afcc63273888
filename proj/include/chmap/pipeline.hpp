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

#ifndef CHMAP_PIPELINE_HPP
#define CHMAP_PIPELINE_HPP

#include "chmap/beamform.hpp"
#include "chmap/channel.hpp"
#include "chmap/mlp.hpp"
#include "chmap/model_io.hpp"
#include "chmap/preprocess.hpp"
#include "chmap/scene.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace chmap
{

enum class band_mode
{
    within_band, // input and target share the downlink carrier
    cross_band,  // uplink carrier in, downlink carrier out
};

std::string to_string(band_mode mode);
band_mode parse_band_mode(const std::string &text);

struct experiment_config
{
    scene_config scene = desk_scene_config();
    frequency_plan ul_plan{2.4e9, 20e6, 16};
    frequency_plan dl_plan{2.5e9, 20e6, 16};
    band_mode mode = band_mode::within_band;

    std::vector<std::size_t> subset_sizes{1, 2, 3, 4, 8, 16};
    std::size_t draws = 3;

    // Dataset-size sweep; skipped when empty.
    std::vector<double> train_fractions;
    std::size_t fraction_subset_size = 8;

    std::vector<std::size_t> hidden; // empty: scaled_hidden_widths(2 K M)
    train_config train;
    double snr = 1.0;
    double noise_std = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

// Desk-scale defaults: 4 x 4 antennas, K = 16, 2048 users, mini-batch 32.
experiment_config desk_experiment_config();

struct split_index
{
    std::vector<std::size_t> order;
    std::vector<std::size_t> train; // first floor(0.8 N) of order
    std::vector<std::size_t> test;
};

// Seeded uniform shuffle and 4:1 prefix split. Throws insufficient_samples
// when either side would be empty.
split_index split_dataset(std::size_t count, std::uint64_t seed);

// Uniform draw of `size` distinct antennas, sorted; a function of (seed, size, draw).
antenna_mask select_subset(std::size_t antennas, std::size_t size, std::uint64_t seed, std::size_t draw = 0);

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

// Honours the band mode: within_band generates both tensors at f_DL.
dataset make_experiment_dataset(const experiment_config &config);

// Column j is the masked, normalized, flattened h_ul of samples[indices[j]].
Eigen::MatrixXd input_matrix(const dataset &data, std::span<const std::size_t> indices, const norm_stats &stats,
                             const antenna_mask &mask);
// Column j is the normalized, flattened h_dl of samples[indices[j]].
Eigen::MatrixXd target_matrix(const dataset &data, std::span<const std::size_t> indices, const norm_stats &stats);

struct training_outcome
{
    model_bundle bundle;
    std::vector<epoch_record> history;
};

// Fits stats on the training indices, builds the network and trains it.
training_outcome train_mapping(const dataset &data, std::span<const std::size_t> train_indices,
                               const antenna_mask &mask, std::span<const std::size_t> hidden,
                               const train_config &config, std::uint64_t split_seed,
                               const epoch_callback &on_epoch = {});

struct evaluation
{
    rate_report rates;
    double test_nmse = 0.0; // mean ||h_hat - h||^2 / ||h||^2 on denormalized channels
};

// Predicts h_dl of every indexed sample from its masked h_ul, beamforms with
// the prediction and averages the rates over the samples.
evaluation evaluate(const model_bundle &bundle, const dataset &data, std::span<const std::size_t> indices, double snr);

struct run_result
{
    band_mode mode = band_mode::within_band;
    std::size_t subset_size = 0;
    std::size_t draw = 0;
    std::uint64_t seed = 0;
    double snr = 1.0;
    rate_report rates;
    double test_nmse = 0.0;
    double train_fraction = 1.0;
    double wall_time_s = 0.0;
    std::vector<epoch_record> history;
    model_bundle bundle;
};

struct run_progress
{
    std::size_t subset_size = 0;
    std::size_t draw = 0;
    double train_fraction = 1.0;
    epoch_record epoch;
};
using progress_callback = std::function<void(const run_progress &)>;

// One run per (subset size, draw) on the full training split.
std::vector<run_result> run_experiment(const experiment_config &config, const dataset &data,
                                       const progress_callback &on_progress = {});

// One run per (training fraction, draw) at fraction_subset_size antennas,
// retrained from scratch each time against the fixed test split.
std::vector<run_result> run_dataset_size_sweep(const experiment_config &config, const dataset &data,
                                               const progress_callback &on_progress = {});

// run_experiment followed by run_dataset_size_sweep on one generated dataset.
std::vector<run_result> run_sweep(const experiment_config &config, const progress_callback &on_progress = {});

inline constexpr char csv_header[] =
    "mode,subset_size,draw,seed,snr,rate_predicted,rate_upper,rate_lower,test_nmse,train_fraction,wall_time_s";

void write_csv(std::ostream &out, std::span<const run_result> results);
void report_csv(std::span<const run_result> results, const std::filesystem::path &path);

} // namespace chmap

#endif
