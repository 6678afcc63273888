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
#include "chmap/preprocess.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace chmap;

namespace
{

dataset from_tensors(const std::vector<channel_tensor> &ul, const std::vector<channel_tensor> &dl)
{
    dataset d;
    d.antennas = ul.front().antennas;
    d.subcarriers = ul.front().subcarriers;
    d.ul_plan = d.dl_plan = {2.5e9, 20e6, d.subcarriers};
    for (std::size_t i = 0; i < ul.size(); ++i)
        d.samples.push_back({i, {}, ul[i], dl[i]});
    return d;
}

channel_tensor filled(std::size_t m, std::size_t k, cplx v)
{
    channel_tensor t(m, k);
    std::fill(t.values.begin(), t.values.end(), v);
    return t;
}

} // namespace

TEST_CASE("stats of a two-value dataset")
{
    const auto d = from_tensors({filled(1, 1, 1.0)}, {filled(1, 1, 3.0)});
    const auto s = fit_stats(d);
    CHECK(s.mean == cplx(2.0, 0.0));
    CHECK(s.max_abs == 1.0);
    const auto n = normalize(d.samples[0].h_ul, s);
    CHECK(n(0, 0, 0) == -1.0);
    CHECK(n(0, 0, 1) == 0.0);
}

TEST_CASE("stats reject empty and constant data")
{
    const auto d = from_tensors({filled(2, 2, {1.0, 2.0})}, {filled(2, 2, {1.0, 2.0})});
    CHECK_THROWS_AS(fit_stats(d), degenerate_dataset);
    CHECK_THROWS_AS(fit_stats(d, std::vector<std::size_t>{}), empty_dataset);
    CHECK_THROWS(fit_stats(d, std::vector<std::size_t>{3}));
}

TEST_CASE("stats match a flat scan over both bands of the fitted users")
{
    std::mt19937_64 rng(21);
    std::vector<channel_tensor> ul, dl;
    for (int i = 0; i < 4; ++i)
    {
        ul.push_back(oracle::random_tensor(rng, 3, 5));
        dl.push_back(oracle::random_tensor(rng, 3, 5));
    }
    const auto d = from_tensors(ul, dl);
    const std::vector<std::size_t> idx{0, 2, 3};

    std::vector<cplx> flat;
    for (auto i : idx)
    {
        flat.insert(flat.end(), ul[i].values.begin(), ul[i].values.end());
        flat.insert(flat.end(), dl[i].values.begin(), dl[i].values.end());
    }
    cplx mu{};
    for (auto v : flat)
        mu += v;
    mu /= static_cast<double>(flat.size());
    double delta = 0.0;
    for (auto v : flat)
        delta = std::max(delta, std::abs(v - mu));

    const auto s = fit_stats(d, idx);
    CHECK(std::abs(s.mean - mu) < 1e-14);
    CHECK(s.max_abs == doctest::Approx(delta).epsilon(1e-14));
}

TEST_CASE("normalize and denormalize round trip")
{
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto h = oracle::random_tensor(rng, 4, 6, 1e-4);
        const norm_stats s{{1e-5, -2e-5}, 3e-4};
        const auto back = denormalize(normalize(h, s), s);
        REQUIRE(back.values.size() == h.values.size());
        for (std::size_t e = 0; e < h.values.size(); ++e)
            CHECK(std::abs(back.values[e] - h.values[e]) <= 1e-12 * std::abs(h.values[e]) + 1e-24);
    }
}

TEST_CASE("normalization is affine")
{
    const norm_stats s{{0.5, 0.25}, 2.0};
    channel_tensor h(1, 2);
    h(0, 0) = {2.5, -1.75};
    h(0, 1) = {0.5, 0.25};
    const auto n = normalize(h, s);
    CHECK(n(0, 0, 0) == 1.0);
    CHECK(n(0, 0, 1) == -1.0);
    CHECK(n(0, 1, 0) == 0.0);
    CHECK(n(0, 1, 1) == 0.0);
}

TEST_CASE("normalized training data lies in [-1, 1]")
{
    std::mt19937_64 rng(23);
    std::vector<channel_tensor> ul, dl;
    for (int i = 0; i < 10; ++i)
    {
        ul.push_back(oracle::random_tensor(rng, 4, 4, 3.0));
        dl.push_back(oracle::random_tensor(rng, 4, 4, 3.0));
    }
    const auto d = from_tensors(ul, dl);
    const auto s = fit_stats(d);
    for (const auto &smp : d.samples)
        for (const auto *h : {&smp.h_ul, &smp.h_dl})
            for (double v : normalize(*h, s).data)
                CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("antenna mask validation")
{
    const antenna_mask m(4, {2, 0});
    CHECK(m.selected() == std::vector<std::size_t>{0, 2});
    CHECK(m.contains(0));
    CHECK_FALSE(m.contains(1));
    CHECK(antenna_mask::full(3).size() == 3);
    CHECK_THROWS_AS(antenna_mask(4, {}), chmap::invalid_argument);
    CHECK_THROWS_AS(antenna_mask(4, {1, 1}), chmap::invalid_argument);
    CHECK_THROWS_AS(antenna_mask(4, {4}), chmap::invalid_argument);
}

TEST_CASE("masking zeroes unselected rows and is idempotent")
{
    real_tensor t(4, 3);
    for (std::size_t i = 0; i < t.data.size(); ++i)
        t.data[i] = static_cast<double>(i + 1);
    const antenna_mask m(4, {0, 2});
    const auto once = apply_mask(t, m);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t p = 0; p < 2; ++p)
                CHECK(once(a, k, p) == (m.contains(a) ? t(a, k, p) : 0.0));
    CHECK(apply_mask(once, m).data == once.data);
    CHECK_THROWS_AS(apply_mask(t, antenna_mask(3, {0})), shape_mismatch);
}

TEST_CASE("flatten order is antenna, subcarrier, real/imag")
{
    real_tensor t(2, 2);
    t(1, 0, 0) = 7.0;
    t(0, 1, 1) = 5.0;
    const auto v = flatten(t);
    REQUIRE(v.size() == 8);
    CHECK(v[4] == 7.0);
    CHECK(v[3] == 5.0);
    const auto back = unflatten(v, 2, 2);
    CHECK(back.data == t.data);
    CHECK_THROWS_AS(unflatten(v, 2, 3), shape_mismatch);
}
