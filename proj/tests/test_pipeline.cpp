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

#include "chmap/errors.hpp"
#include "chmap/pipeline.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

using namespace chmap;

namespace
{

experiment_config tiny_config()
{
    experiment_config cfg = desk_experiment_config();
    cfg.scene.antennas = ceiling_grid(2, 2, 1.0, 5.0, 5.0, 2.5);
    cfg.scene.user_grids = {{{3.713, 4.127, 1.0}, 0.07, 0.07, 0.01}};
    cfg.scene.max_paths = 2;
    cfg.ul_plan = {2.4e9, 20e6, 4};
    cfg.dl_plan = {2.5e9, 20e6, 4};
    cfg.mode = band_mode::cross_band;
    cfg.subset_sizes = {1, 4};
    cfg.draws = 2;
    cfg.train_fractions = {0.5, 1.0};
    cfg.fraction_subset_size = 2;
    cfg.hidden = {8};
    cfg.train.epochs = 3;
    cfg.train.batch_size = 8;
    return cfg;
}

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::vector<std::string> fields(const std::string &line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');)
        out.push_back(f);
    return out;
}

} // namespace

TEST_CASE("band mode names")
{
    CHECK(to_string(band_mode::within_band) == "within_band");
    CHECK(parse_band_mode("cross_band") == band_mode::cross_band);
    CHECK_THROWS_AS(parse_band_mode("both"), config_error);
}

TEST_CASE("4:1 split sizes, coverage and determinism")
{
    const auto s10 = split_dataset(10, 1);
    CHECK(s10.train.size() == 8);
    CHECK(s10.test.size() == 2);
    const auto s5 = split_dataset(5, 1);
    CHECK(s5.train.size() == 4);
    CHECK(s5.test.size() == 1);
    CHECK_THROWS_AS(split_dataset(1, 1), insufficient_samples);
    CHECK_THROWS_AS(split_dataset(0, 1), insufficient_samples);

    const auto a = split_dataset(100, 7), b = split_dataset(100, 7), c = split_dataset(100, 8);
    CHECK(a.order == b.order);
    CHECK(a.order != c.order);
    std::set<std::size_t> all(a.train.begin(), a.train.end());
    for (auto i : a.test)
        CHECK(all.insert(i).second);
    CHECK(all.size() == 100);
    CHECK(*all.rbegin() == 99);
}

TEST_CASE("antenna subsets are seeded, valid and cover every antenna")
{
    std::set<std::size_t> singletons;
    for (std::size_t draw = 0; draw < 200; ++draw)
    {
        const auto m = select_subset(16, 1, 3, draw);
        REQUIRE(m.size() == 1);
        singletons.insert(m.selected().front());
    }
    CHECK(singletons.size() == 16);

    for (std::size_t size = 1; size <= 16; ++size)
    {
        const auto m = select_subset(16, size, 3, 1);
        CHECK(m.size() == size);
        CHECK(m == select_subset(16, size, 3, 1));
        CHECK(std::is_sorted(m.selected().begin(), m.selected().end()));
    }
    CHECK(select_subset(16, 4, 3, 0) != select_subset(16, 4, 3, 1));
    CHECK_THROWS_AS(select_subset(4, 0, 1), chmap::invalid_argument);
    CHECK_THROWS_AS(select_subset(4, 5, 1), chmap::invalid_argument);
}

TEST_CASE("derived seeds depend on every tag")
{
    CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {2}) != derive_seed(2, {2}));
    CHECK(derive_seed(1, {1ULL << 40}) != derive_seed(1, {0}));
}

TEST_CASE("within-band datasets feed the downlink carrier to both sides")
{
    auto cfg = tiny_config();
    cfg.mode = band_mode::within_band;
    const auto d = make_experiment_dataset(cfg);
    CHECK(d.ul_plan.center_hz == cfg.dl_plan.center_hz);
    for (const auto &s : d.samples)
        CHECK(s.h_ul.values == s.h_dl.values);
}

TEST_CASE("input rows outside the mask are zero")
{
    const auto cfg = tiny_config();
    const auto d = make_experiment_dataset(cfg);
    const auto stats = fit_stats(d);
    const std::vector<std::size_t> idx{0, 5, 9};
    const antenna_mask m(4, {1, 3});
    const Eigen::MatrixXd x = input_matrix(d, idx, stats, m);
    const Eigen::MatrixXd y = target_matrix(d, idx, stats);
    CHECK(x.rows() == 32);
    CHECK(x.cols() == 3);
    for (Eigen::Index r = 0; r < x.rows(); ++r)
    {
        const auto antenna = static_cast<std::size_t>(r) / 8;
        if (!m.contains(antenna))
            CHECK(x.row(r).isZero(0.0));
    }
    CHECK(y.cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("experiments are reproducible and keep train and test apart")
{
    const auto cfg = tiny_config();
    const auto data = make_experiment_dataset(cfg);
    const auto a = run_experiment(cfg, data), b = run_experiment(cfg, data);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].rates.rate_predicted == b[i].rates.rate_predicted);
        CHECK(a[i].test_nmse == b[i].test_nmse);
        CHECK(a[i].rates.rate_predicted <= a[i].rates.rate_upper + 1e-12);
        CHECK(a[i].rates.rate_lower <= a[i].rates.rate_upper + 1e-12);
        CHECK(a[i].history.size() == 3);
        CHECK(a[i].rates.subset.size() == a[i].subset_size);
    }
    // With every antenna observed the lower bound is the upper bound.
    CHECK(a[2].rates.rate_lower == doctest::Approx(a[2].rates.rate_upper).epsilon(1e-14));

    const auto sizes = run_dataset_size_sweep(cfg, data);
    REQUIRE(sizes.size() == 4);
    CHECK(sizes[0].train_fraction == 0.5);
    CHECK(sizes[3].train_fraction == 1.0);
    CHECK(sizes[3].subset_size == 2);
}

TEST_CASE("evaluation matches the trained bundle shapes")
{
    const auto cfg = tiny_config();
    const auto data = make_experiment_dataset(cfg);
    const auto split = split_dataset(data.size(), cfg.seed);
    const auto out = train_mapping(data, split.train, antenna_mask(4, {0}), cfg.hidden, cfg.train, cfg.seed);
    CHECK(out.bundle.split_seed == cfg.seed);
    const auto ev = evaluate(out.bundle, data, split.test, 1.0);
    CHECK(ev.test_nmse > 0.0);
    CHECK(ev.rates.subset == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(evaluate(out.bundle, data, std::vector<std::size_t>{}, 1.0), empty_dataset);
    CHECK_THROWS_AS(train_mapping(data, split.train, antenna_mask(3, {0}), cfg.hidden, cfg.train, cfg.seed),
                    shape_mismatch);
}

TEST_CASE("csv output")
{
    auto cfg = tiny_config();
    cfg.subset_sizes = {2};
    cfg.draws = 1;
    cfg.train_fractions = {};
    const auto results = run_sweep(cfg);
    std::ostringstream out;
    write_csv(out, results);
    const auto l = lines(out.str());
    REQUIRE(l.size() == 2);
    CHECK(l[0] == csv_header);
    const auto f = fields(l[1]);
    REQUIRE(f.size() == 11);
    CHECK(f[0] == "cross_band");
    CHECK(f[1] == "2");
    CHECK(f[2] == "0");
    CHECK(f[4] == "1");
    CHECK(std::stod(f[5]) == results[0].rates.rate_predicted);
    CHECK(std::stod(f[8]) == results[0].test_nmse);
    CHECK(f[9] == "1");
    CHECK(f[10].find('.') == f[10].size() - 4);
}

TEST_CASE("config validation")
{
    auto cfg = tiny_config();
    cfg.subset_sizes = {5};
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = tiny_config();
    cfg.train_fractions = {0.0};
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = tiny_config();
    cfg.snr = 0.0;
    CHECK_THROWS_AS(cfg.validate(), config_error);
}
