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

// Command-line front end: generate, bijectivity, train, eval and sweep.

#include "chmap/config.hpp"
#include "chmap/dataset_io.hpp"
#include "chmap/errors.hpp"
#include "chmap/model_io.hpp"
#include "chmap/pipeline.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace
{

struct common_options
{
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> snr;
    std::optional<std::size_t> epochs;
};

void add_common(CLI::App *cmd, common_options &opt)
{
    cmd->add_option("-c,--config", opt.config_path, "Experiment/scene config file")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", opt.out_dir, "Output directory")->required();
    cmd->add_option("--seed", opt.seed, "Override the master seed");
    cmd->add_option("--snr", opt.snr, "Override the linear SNR");
    cmd->add_option("--epochs", opt.epochs, "Override the number of training epochs");
}

chmap::experiment_config load(const common_options &opt)
{
    auto cfg = chmap::load_experiment_config(opt.config_path);
    if (opt.seed)
        cfg.seed = *opt.seed;
    if (opt.snr)
        cfg.snr = *opt.snr;
    if (opt.epochs)
        cfg.train.epochs = *opt.epochs;
    cfg.validate();
    fs::create_directories(opt.out_dir);
    return cfg;
}

chmap::dataset dataset_for(const chmap::experiment_config &cfg, const std::string &path)
{
    return path.empty() ? chmap::make_experiment_dataset(cfg) : chmap::read_dataset(path);
}

chmap::antenna_mask mask_for(const chmap::experiment_config &cfg, std::size_t antennas,
                             const std::vector<std::size_t> &subset, std::optional<std::size_t> subset_size,
                             std::size_t draw)
{
    if (!subset.empty())
        return chmap::antenna_mask(antennas, subset);
    const std::size_t size = subset_size ? *subset_size : cfg.subset_sizes.front();
    return chmap::select_subset(antennas, size, cfg.seed, draw);
}

void print_epoch(const std::string &prefix, const chmap::epoch_record &e, std::size_t epochs)
{
    std::printf("%sepoch %zu/%zu loss %.6e time %.2fs\n", prefix.c_str(), e.epoch + 1, epochs, e.mean_loss,
                e.wall_seconds);
    std::fflush(stdout);
}

std::string join(const std::vector<std::size_t> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Channel mapping in space and frequency: simulate, train, evaluate"};
    app.require_subcommand(1);

    common_options gen_opt, bij_opt, train_opt, eval_opt, sweep_opt;
    std::optional<double> noise_std;
    std::string dataset_path, model_path;
    std::vector<std::size_t> subset;
    std::optional<std::size_t> subset_size;
    std::size_t draw = 0;
    double tolerance = 1e-9;

    auto *gen = app.add_subcommand("generate", "Simulate the scene and write a dataset file");
    add_common(gen, gen_opt);
    gen->add_option("--noise-std", noise_std, "Uplink noise standard deviation per entry");

    auto *bij = app.add_subcommand("bijectivity", "Minimum pairwise channel separation for an antenna subset");
    add_common(bij, bij_opt);
    bij->add_option("-d,--dataset", dataset_path, "Dataset file (generated from the config when omitted)");
    auto *bij_subset = bij->add_option("--subset", subset, "Explicit antenna indices");
    bij->add_option("--subset-size", subset_size, "Random subset size")->excludes(bij_subset);
    bij->add_option("--draw", draw, "Random subset draw index");
    bij->add_option("--tolerance", tolerance, "Separation threshold for the verdict");

    auto *trn = app.add_subcommand("train", "Train a channel-mapping model");
    add_common(trn, train_opt);
    trn->add_option("-d,--dataset", dataset_path, "Dataset file (generated from the config when omitted)");
    auto *trn_subset = trn->add_option("--subset", subset, "Explicit antenna indices");
    trn->add_option("--subset-size", subset_size, "Random subset size")->excludes(trn_subset);
    trn->add_option("--draw", draw, "Random subset draw index");

    auto *evl = app.add_subcommand("eval", "Evaluate a model on the test split of a dataset");
    add_common(evl, eval_opt);
    evl->add_option("-m,--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
    evl->add_option("-d,--dataset", dataset_path, "Dataset file")->required()->check(CLI::ExistingFile);

    auto *swp = app.add_subcommand("sweep", "Run the subset-size and dataset-size experiments");
    add_common(swp, sweep_opt);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (gen->parsed())
        {
            auto cfg = load(gen_opt);
            if (noise_std)
                cfg.noise_std = *noise_std;
            const auto data = chmap::make_experiment_dataset(cfg);
            const auto path = fs::path(gen_opt.out_dir) / "dataset.bin";
            chmap::write_dataset(path, data);
            std::printf("wrote %zu samples (M=%zu, K=%zu, f_ul=%g Hz, f_dl=%g Hz) to %s\n", data.size(),
                        data.antennas, data.subcarriers, data.ul_plan.center_hz, data.dl_plan.center_hz,
                        path.c_str());
        }
        else if (bij->parsed())
        {
            const auto cfg = load(bij_opt);
            const auto data = dataset_for(cfg, dataset_path);
            const auto mask = mask_for(cfg, data.antennas, subset, subset_size, draw);
            const auto rep = chmap::check_bijectivity(data, mask.selected(), tolerance);
            const auto path = fs::path(bij_opt.out_dir) / "bijectivity.txt";
            std::ofstream out(path);
            out << "subset = " << join(rep.subset) << "\n"
                << "min_pairwise_distance = " << rep.min_pairwise_distance << "\n"
                << "closest_pair = " << data.samples[rep.user_a].user_index << " "
                << data.samples[rep.user_b].user_index << "\n"
                << "tolerance = " << tolerance << "\n"
                << "verdict = " << (rep.verdict ? "unique" : "ambiguous") << "\n";
            std::printf("subset {%s}: min distance %.6e between users %zu and %zu -> %s\n", join(rep.subset).c_str(),
                        rep.min_pairwise_distance, data.samples[rep.user_a].user_index,
                        data.samples[rep.user_b].user_index, rep.verdict ? "unique" : "ambiguous");
        }
        else if (trn->parsed())
        {
            const auto cfg = load(train_opt);
            const auto data = dataset_for(cfg, dataset_path);
            const auto mask = mask_for(cfg, data.antennas, subset, subset_size, draw);
            const auto split = chmap::split_dataset(data.size(), cfg.seed);
            auto tc = cfg.train;
            tc.seed = chmap::derive_seed(cfg.seed, {mask.size(), draw});
            const auto outcome = chmap::train_mapping(
                data, split.train, mask, cfg.hidden, tc, cfg.seed,
                [&](const chmap::epoch_record &e) { print_epoch("", e, tc.epochs); });

            const auto model_file = fs::path(train_opt.out_dir) / "model.bin";
            chmap::save_model(model_file, outcome.bundle);
            std::ofstream log(fs::path(train_opt.out_dir) / "training_log.csv");
            log << "epoch,mean_loss,objective,wall_time_s\n";
            for (const auto &e : outcome.history)
                log << e.epoch << ',' << e.mean_loss << ',' << e.objective << ',' << e.wall_seconds << '\n';
            std::printf("subset {%s}, %zu training samples -> %s\n", join(mask.selected()).c_str(),
                        split.train.size(), model_file.c_str());
        }
        else if (evl->parsed())
        {
            const auto cfg = load(eval_opt);
            const auto start = std::chrono::steady_clock::now();
            const auto bundle = chmap::load_model(model_path);
            const auto data = chmap::read_dataset(dataset_path);
            const auto split = chmap::split_dataset(data.size(), bundle.split_seed);
            const auto ev = chmap::evaluate(bundle, data, split.test, cfg.snr);

            chmap::run_result r;
            r.mode = data.ul_plan.center_hz == data.dl_plan.center_hz ? chmap::band_mode::within_band
                                                                         : chmap::band_mode::cross_band;
            r.subset_size = bundle.mask.size();
            r.seed = bundle.split_seed;
            r.snr = cfg.snr;
            r.rates = ev.rates;
            r.test_nmse = ev.test_nmse;
            r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const auto path = fs::path(eval_opt.out_dir) / "eval.csv";
            chmap::report_csv(std::span(&r, 1), path);
            std::printf("rate predicted %.6g, upper %.6g, lower %.6g bits/s/Hz, test NMSE %.4e -> %s\n",
                        ev.rates.rate_predicted, ev.rates.rate_upper, ev.rates.rate_lower, ev.test_nmse,
                        path.c_str());
        }
        else if (swp->parsed())
        {
            const auto cfg = load(sweep_opt);
            const auto results = chmap::run_sweep(cfg, [&](const chmap::run_progress &p) {
                char prefix[96];
                std::snprintf(prefix, sizeof(prefix), "[size %zu draw %zu fraction %g] ", p.subset_size, p.draw,
                              p.train_fraction);
                print_epoch(prefix, p.epoch, cfg.train.epochs);
            });
            const auto path = fs::path(sweep_opt.out_dir) / "results.csv";
            chmap::report_csv(results, path);
            std::printf("%zu runs -> %s\n", results.size(), path.c_str());
        }
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
