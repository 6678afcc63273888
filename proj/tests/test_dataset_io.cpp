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

#include "chmap/dataset_io.hpp"
#include "chmap/errors.hpp"

#include <doctest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include <unistd.h>

using namespace chmap;
namespace fs = std::filesystem;

namespace
{

dataset small_dataset()
{
    dataset d;
    d.antennas = 2;
    d.subcarriers = 3;
    d.ul_plan = {2.4e9, 20e6, 3};
    d.dl_plan = {2.5e9, 20e6, 3};
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n;
    for (std::size_t i = 0; i < 4; ++i)
    {
        dataset_sample s;
        s.user_index = 10 + i;
        s.position = {n(rng), n(rng), n(rng)};
        s.h_ul = channel_tensor(2, 3);
        s.h_dl = channel_tensor(2, 3);
        for (auto &v : s.h_ul.values)
            v = {n(rng), n(rng)};
        for (auto &v : s.h_dl.values)
            v = {n(rng), n(rng)};
        d.samples.push_back(s);
    }
    return d;
}

std::vector<unsigned char> slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path &p, const std::vector<unsigned char> &bytes)
{
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

template <class T>
T read_le(const std::vector<unsigned char> &b, std::size_t at)
{
    static_assert(std::endian::native == std::endian::little);
    T v;
    std::memcpy(&v, b.data() + at, sizeof v);
    return v;
}

fs::path temp_file(const char *name)
{
    return fs::temp_directory_path() / (std::string("chmap_test_") + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST_CASE("dataset file layout")
{
    const auto d = small_dataset();
    const auto p = temp_file("layout.bin");
    write_dataset(p, d);
    const auto b = slurp(p);

    const std::size_t per_sample = 4 + 24 + 2 * (2 * 3 * 16);
    REQUIRE(b.size() == 48 + 4 * per_sample);
    CHECK(std::memcmp(b.data(), "CHMAPDS1", 8) == 0);
    CHECK(read_le<std::uint32_t>(b, 8) == 2);
    CHECK(read_le<std::uint32_t>(b, 12) == 3);
    CHECK(read_le<std::uint64_t>(b, 16) == 4);
    CHECK(read_le<double>(b, 24) == 2.4e9);
    CHECK(read_le<double>(b, 32) == 2.5e9);
    CHECK(read_le<double>(b, 40) == 20e6);

    const std::size_t s1 = 48 + per_sample;
    CHECK(read_le<std::uint32_t>(b, s1) == 11);
    CHECK(read_le<double>(b, s1 + 4) == d.samples[1].position.x);
    CHECK(read_le<double>(b, s1 + 20) == d.samples[1].position.z);
    // h_ul(1, 2) is entry 5; h_dl follows the 6 uplink entries.
    CHECK(read_le<double>(b, s1 + 28 + 5 * 16) == d.samples[1].h_ul(1, 2).real());
    CHECK(read_le<double>(b, s1 + 28 + 5 * 16 + 8) == d.samples[1].h_ul(1, 2).imag());
    CHECK(read_le<double>(b, s1 + 28 + 6 * 16) == d.samples[1].h_dl(0, 0).real());
    fs::remove(p);
}

TEST_CASE("dataset round trip is bit exact")
{
    const auto d = small_dataset();
    const auto p = temp_file("roundtrip.bin");
    write_dataset(p, d);
    const auto r = read_dataset(p);
    CHECK(r.antennas == d.antennas);
    CHECK(r.subcarriers == d.subcarriers);
    CHECK(r.ul_plan.center_hz == d.ul_plan.center_hz);
    CHECK(r.dl_plan.center_hz == d.dl_plan.center_hz);
    CHECK(r.dl_plan.bandwidth_hz == d.dl_plan.bandwidth_hz);
    CHECK(r.dl_plan.subcarriers == 3);
    REQUIRE(r.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        CHECK(r.samples[i].user_index == d.samples[i].user_index);
        CHECK(r.samples[i].position == d.samples[i].position);
        CHECK(r.samples[i].h_ul.values == d.samples[i].h_ul.values);
        CHECK(r.samples[i].h_dl.values == d.samples[i].h_dl.values);
        CHECK(r.samples[i].h_ul.plan.center_hz == 2.4e9);
        CHECK(r.samples[i].h_dl.plan.center_hz == 2.5e9);
    }
    fs::remove(p);
}

TEST_CASE("corrupt dataset files are rejected")
{
    const auto d = small_dataset();
    const auto p = temp_file("corrupt.bin");
    write_dataset(p, d);
    const auto good = slurp(p);

    auto bad = good;
    bad[0] = 'X';
    spit(p, bad);
    CHECK_THROWS_AS(read_dataset(p), format_error);

    bad = good;
    bad.pop_back();
    spit(p, bad);
    CHECK_THROWS_AS(read_dataset(p), format_error);

    bad = good;
    bad.push_back(0);
    spit(p, bad);
    CHECK_THROWS_AS(read_dataset(p), format_error);

    bad = std::vector<unsigned char>(good.begin(), good.begin() + 20);
    spit(p, bad);
    CHECK_THROWS_AS(read_dataset(p), format_error);

    bad = good;
    bad[12] = 0; // K = 0
    spit(p, bad);
    CHECK_THROWS_AS(read_dataset(p), format_error);

    fs::remove(p);
    CHECK_THROWS_AS(read_dataset(p), format_error);
}
