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

#include "chmap/beamform.hpp"
#include "chmap/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace chmap;

TEST_CASE("conjugate weights have unit norm per subcarrier")
{
    std::mt19937_64 rng(41);
    const auto h = oracle::random_tensor(rng, 5, 7);
    const auto v = conjugate_weights(h);
    for (std::size_t k = 0; k < 7; ++k)
    {
        double e = 0.0;
        for (std::size_t m = 0; m < 5; ++m)
            e += std::norm(v(m, k));
        CHECK(e == doctest::Approx(1.0).epsilon(1e-14));
    }
    channel_tensor z(2, 2);
    CHECK_THROWS_AS(conjugate_weights(z), zero_channel);
}

TEST_CASE("rate examples")
{
    channel_tensor one(1, 1);
    one(0, 0) = {1.0, 0.0};
    CHECK(matched_rate(one, 1.0) == 1.0);
    CHECK(mismatched_rate(one, conjugate_weights(one), 1.0) == 1.0);
    CHECK(matched_rate(channel_tensor(3, 4), 10.0) == 0.0);
    CHECK_THROWS_AS(matched_rate(one, 0.0), chmap::invalid_argument);
    CHECK_THROWS_AS(matched_rate(one, -1.0), chmap::invalid_argument);
}

TEST_CASE("matched rate agrees with a long-double per-subcarrier sum")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial)
    {
        const auto h = oracle::random_tensor(rng, 6, 9, 0.3);
        for (double snr : {0.1, 1.0, 100.0})
        {
            CHECK(matched_rate(h, snr) == doctest::Approx(oracle::matched_rate_terms(h, snr)).epsilon(1e-13));
            CHECK(mismatched_rate(h, conjugate_weights(h), snr) ==
                  doctest::Approx(matched_rate(h, snr)).epsilon(1e-12));
        }
    }
}

TEST_CASE("the matched beamformer dominates any unit-norm beamformer")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial)
    {
        const auto h = oracle::random_tensor(rng, 4, 5);
        const double upper = matched_rate(h, 2.0);
        for (int i = 0; i < 200; ++i)
            CHECK(mismatched_rate(h, oracle::random_unit_beamformer(rng, 4, 5), 2.0) <= upper + 1e-12);
    }
}

TEST_CASE("rates are invariant to a common phase and monotone in snr")
{
    std::mt19937_64 rng(44);
    const auto h = oracle::random_tensor(rng, 4, 6);
    auto rotated = h;
    for (auto &x : rotated.values)
        x *= std::polar(1.0, 0.77);
    CHECK(matched_rate(rotated, 1.0) == doctest::Approx(matched_rate(h, 1.0)).epsilon(1e-14));

    std::mt19937_64 rng2(45);
    const auto v = oracle::random_unit_beamformer(rng2, 4, 6);
    auto v_rot = v;
    for (auto &x : v_rot.weights)
        x *= std::polar(1.0, -1.3);
    CHECK(mismatched_rate(h, v_rot, 1.0) == doctest::Approx(mismatched_rate(h, v, 1.0)).epsilon(1e-13));

    double prev = 0.0;
    for (double snr : {0.01, 0.1, 1.0, 10.0, 100.0})
    {
        const double r = matched_rate(h, snr);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("lower bound grows with the subset and reaches the full rate")
{
    std::mt19937_64 rng(46);
    const auto h = oracle::random_tensor(rng, 6, 4);
    const std::vector<std::size_t> a{2}, b{2, 4}, c{0, 2, 4}, all{0, 1, 2, 3, 4, 5};
    const double ra = lower_bound_rate(h, a, 1.0), rb = lower_bound_rate(h, b, 1.0),
                 rc = lower_bound_rate(h, c, 1.0);
    CHECK(ra <= rb);
    CHECK(rb <= rc);
    CHECK(lower_bound_rate(h, all, 1.0) == doctest::Approx(matched_rate(h, 1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(lower_bound_rate(h, std::vector<std::size_t>{6}, 1.0), chmap::invalid_argument);
}
