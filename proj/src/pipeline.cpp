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

#include "chmap/pipeline.hpp"

#include "chmap/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace chmap
{

std::string to_string(band_mode mode)
{
    return mode == band_mode::within_band ? "within_band" : "cross_band";
}

band_mode parse_band_mode(const std::string &text)
{
    if (text == "within_band")
        return band_mode::within_band;
    if (text == "cross_band")
        return band_mode::cross_band;
    throw config_error("unknown mode '" + text + "' (expected within_band or cross_band)");
}

void experiment_config::validate() const
{
    ul_plan.validate();
    dl_plan.validate();
    train.validate();
    if (subset_sizes.empty())
        throw config_error("subset_sizes must not be empty");
    if (draws < 1)
        throw config_error("draws must be at least 1");
    for (double f : train_fractions)
        if (!(f > 0.0 && f <= 1.0))
            throw config_error("train fractions must lie in (0, 1]");
    if (!(snr > 0.0))
        throw config_error("snr must be positive");
    if (!(noise_std >= 0.0))
        throw config_error("noise_std must be non-negative");
    for (auto size : subset_sizes)
        if (size < 1 || size > scene.antennas.size())
            throw config_error("subset size " + std::to_string(size) + " is not in 1.." +
                               std::to_string(scene.antennas.size()));
    if (!train_fractions.empty() && (fraction_subset_size < 1 || fraction_subset_size > scene.antennas.size()))
        throw config_error("fraction_subset_size is out of range");
}

experiment_config desk_experiment_config()
{
    experiment_config cfg;
    cfg.train.batch_size = 32;
    return cfg;
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
{
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    for (auto t : tags)
    {
        words.push_back(static_cast<std::uint32_t>(t));
        words.push_back(static_cast<std::uint32_t>(t >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (std::uint64_t(out[0]) << 32) | out[1];
}

split_index split_dataset(std::size_t count, std::uint64_t seed)
{
    split_index s;
    s.order.resize(count);
    std::iota(s.order.begin(), s.order.end(), std::size_t{0});
    std::mt19937_64 rng(derive_seed(seed, {0x5e11}));
    std::shuffle(s.order.begin(), s.order.end(), rng);
    const std::size_t n_train = count * 4 / 5;
    if (n_train == 0 || n_train == count)
        throw insufficient_samples("a 4:1 split of " + std::to_string(count) + " samples leaves one side empty");
    s.train.assign(s.order.begin(), s.order.begin() + static_cast<std::ptrdiff_t>(n_train));
    s.test.assign(s.order.begin() + static_cast<std::ptrdiff_t>(n_train), s.order.end());
    return s;
}

antenna_mask select_subset(std::size_t antennas, std::size_t size, std::uint64_t seed, std::size_t draw)
{
    if (size < 1 || size > antennas)
        throw invalid_argument("subset size " + std::to_string(size) + " is not in 1.." + std::to_string(antennas));
    std::vector<std::size_t> all(antennas);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> picked;
    std::mt19937_64 rng(derive_seed(seed, {0xa17e, size, draw}));
    std::sample(all.begin(), all.end(), std::back_inserter(picked), size, rng);
    return antenna_mask(antennas, std::move(picked));
}

dataset make_experiment_dataset(const experiment_config &config)
{
    config.validate();
    const scene s = build_scene(config.scene);
    const frequency_plan input_plan = config.mode == band_mode::within_band ? config.dl_plan : config.ul_plan;
    return build_dataset(s, input_plan, config.dl_plan, config.noise_std, derive_seed(config.seed, {0x0153}));
}

Eigen::MatrixXd input_matrix(const dataset &data, std::span<const std::size_t> indices, const norm_stats &stats,
                             const antenna_mask &mask)
{
    const auto rows = static_cast<Eigen::Index>(2 * data.antennas * data.subcarriers);
    Eigen::MatrixXd x(rows, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j)
    {
        const auto v = flatten(apply_mask(normalize(data.samples.at(indices[j]).h_ul, stats), mask));
        x.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(v.data(), rows);
    }
    return x;
}

Eigen::MatrixXd target_matrix(const dataset &data, std::span<const std::size_t> indices, const norm_stats &stats)
{
    const auto rows = static_cast<Eigen::Index>(2 * data.antennas * data.subcarriers);
    Eigen::MatrixXd y(rows, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j)
    {
        const auto v = flatten(normalize(data.samples.at(indices[j]).h_dl, stats));
        y.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(v.data(), rows);
    }
    return y;
}

training_outcome train_mapping(const dataset &data, std::span<const std::size_t> train_indices,
                               const antenna_mask &mask, std::span<const std::size_t> hidden,
                               const train_config &config, std::uint64_t split_seed, const epoch_callback &on_epoch)
{
    if (mask.antennas() != data.antennas)
        throw shape_mismatch("mask covers " + std::to_string(mask.antennas()) + " antennas, dataset has " +
                             std::to_string(data.antennas));
    training_outcome out;
    auto &b = out.bundle;
    b.antennas = data.antennas;
    b.subcarriers = data.subcarriers;
    b.split_seed = split_seed;
    b.mask = mask;
    b.stats = fit_stats(data, train_indices);

    const std::size_t io = 2 * data.antennas * data.subcarriers;
    const auto widths = hidden.empty() ? scaled_hidden_widths(io) : std::vector<std::size_t>(hidden.begin(), hidden.end());
    const auto specs = make_architecture(io, widths);
    b.model = init_model(specs, derive_seed(config.seed, {0x1417}));

    const Eigen::MatrixXd x = input_matrix(data, train_indices, b.stats, mask);
    const Eigen::MatrixXd y = target_matrix(data, train_indices, b.stats);
    out.history = train(b.model, x, y, config, on_epoch);
    return out;
}

evaluation evaluate(const model_bundle &bundle, const dataset &data, std::span<const std::size_t> indices, double snr)
{
    if (indices.empty())
        throw empty_dataset("evaluation set is empty");
    if (bundle.antennas != data.antennas || bundle.subcarriers != data.subcarriers)
        throw shape_mismatch("model was trained for a different antenna or subcarrier count");

    const Eigen::MatrixXd x = input_matrix(data, indices, bundle.stats, bundle.mask);
    const Eigen::MatrixXd y = predict(bundle.model, x);

    evaluation ev;
    ev.rates.snr = snr;
    ev.rates.subset = bundle.mask.selected();
    double nmse_sum = 0.0;
    for (std::size_t j = 0; j < indices.size(); ++j)
    {
        const auto &truth = data.samples[indices[j]].h_dl;
        const auto col = y.col(static_cast<Eigen::Index>(j));
        const channel_tensor pred =
            denormalize(unflatten({col.data(), static_cast<std::size_t>(col.size())}, data.antennas, data.subcarriers),
                        bundle.stats);

        ev.rates.rate_predicted += mismatched_rate(truth, conjugate_weights(pred), snr);
        ev.rates.rate_upper += matched_rate(truth, snr);
        ev.rates.rate_lower += lower_bound_rate(truth, bundle.mask.selected(), snr);

        double err = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < truth.values.size(); ++i)
        {
            err += std::norm(pred.values[i] - truth.values[i]);
            ref += std::norm(truth.values[i]);
        }
        if (!(ref > 0.0))
            throw zero_target("test sample " + std::to_string(indices[j]) + " has a zero downlink channel");
        nmse_sum += err / ref;
    }
    const double n = static_cast<double>(indices.size());
    ev.rates.rate_predicted /= n;
    ev.rates.rate_upper /= n;
    ev.rates.rate_lower /= n;
    ev.test_nmse = nmse_sum / n;
    return ev;
}

namespace
{

void check_disjoint(std::span<const std::size_t> train, std::span<const std::size_t> test)
{
    std::vector<std::size_t> a(train.begin(), train.end()), b(test.begin(), test.end()), common;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (!common.empty())
        throw std::logic_error("train and test splits share sample " + std::to_string(common.front()));
}

run_result single_run(const experiment_config &config, const dataset &data, const split_index &split,
                      std::span<const std::size_t> train_indices, std::size_t subset_size, std::size_t draw,
                      double fraction, const progress_callback &on_progress)
{
    check_disjoint(train_indices, split.test);
    const auto start = std::chrono::steady_clock::now();

    run_result r;
    r.mode = config.mode;
    r.subset_size = subset_size;
    r.draw = draw;
    r.seed = derive_seed(config.seed, {subset_size, draw});
    r.snr = config.snr;
    r.train_fraction = fraction;

    const antenna_mask mask = select_subset(data.antennas, subset_size, config.seed, draw);
    train_config tc = config.train;
    tc.seed = r.seed;
    epoch_callback cb;
    if (on_progress)
        cb = [&](const epoch_record &e) { on_progress({subset_size, draw, fraction, e}); };

    auto outcome = train_mapping(data, train_indices, mask, config.hidden, tc, config.seed, cb);
    const evaluation ev = evaluate(outcome.bundle, data, split.test, config.snr);

    r.rates = ev.rates;
    r.rates.label = to_string(config.mode);
    r.test_nmse = ev.test_nmse;
    r.history = std::move(outcome.history);
    r.bundle = std::move(outcome.bundle);
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace

std::vector<run_result> run_experiment(const experiment_config &config, const dataset &data,
                                       const progress_callback &on_progress)
{
    config.validate();
    const split_index split = split_dataset(data.size(), config.seed);
    std::vector<run_result> out;
    for (auto size : config.subset_sizes)
        for (std::size_t draw = 0; draw < config.draws; ++draw)
            out.push_back(single_run(config, data, split, split.train, size, draw, 1.0, on_progress));
    return out;
}

std::vector<run_result> run_dataset_size_sweep(const experiment_config &config, const dataset &data,
                                               const progress_callback &on_progress)
{
    config.validate();
    const split_index split = split_dataset(data.size(), config.seed);
    std::vector<run_result> out;
    for (double fraction : config.train_fractions)
    {
        const auto n = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(split.train.size()))));
        const std::span<const std::size_t> subset(split.train.data(), n);
        for (std::size_t draw = 0; draw < config.draws; ++draw)
            out.push_back(
                single_run(config, data, split, subset, config.fraction_subset_size, draw, fraction, on_progress));
    }
    return out;
}

std::vector<run_result> run_sweep(const experiment_config &config, const progress_callback &on_progress)
{
    const dataset data = make_experiment_dataset(config);
    auto out = run_experiment(config, data, on_progress);
    auto sizes = run_dataset_size_sweep(config, data, on_progress);
    std::move(sizes.begin(), sizes.end(), std::back_inserter(out));
    return out;
}

namespace
{

// Shortest decimal form that round-trips; locale independent.
std::string number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

} // namespace

void write_csv(std::ostream &out, std::span<const run_result> results)
{
    out << csv_header << '\n';
    for (const auto &r : results)
        out << to_string(r.mode) << ',' << r.subset_size << ',' << r.draw << ',' << r.seed << ',' << number(r.snr)
            << ',' << number(r.rates.rate_predicted) << ',' << number(r.rates.rate_upper) << ','
            << number(r.rates.rate_lower) << ',' << number(r.test_nmse) << ',' << number(r.train_fraction) << ','
            << fixed(r.wall_time_s, 3) << '\n';
}

void report_csv(std::span<const run_result> results, const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw error("cannot open " + path.string() + " for writing");
    write_csv(out, results);
    if (!out.flush())
        throw error("write to " + path.string() + " failed");
}

} // namespace chmap
