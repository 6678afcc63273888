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

#include "binary_io.hpp"

#include <limits>

namespace chmap
{

namespace
{

void write_tensor(detail::binary_writer &w, const channel_tensor &t)
{
    for (const auto &v : t.values)
    {
        w.f64(v.real());
        w.f64(v.imag());
    }
}

channel_tensor read_tensor(detail::binary_reader &r, std::size_t m, std::size_t k)
{
    channel_tensor t(m, k);
    for (auto &v : t.values)
    {
        const double re = r.f64();
        const double im = r.f64();
        v = cplx(re, im);
    }
    return t;
}

} // namespace

void write_dataset(const std::filesystem::path &path, const dataset &data)
{
    constexpr auto u32_max = std::numeric_limits<std::uint32_t>::max();
    if (data.antennas > u32_max || data.subcarriers > u32_max)
        throw format_error("dataset dimensions exceed the u32 header fields");
    if (data.ul_plan.bandwidth_hz != data.dl_plan.bandwidth_hz)
        throw format_error("dataset format stores one bandwidth; uplink and downlink differ");

    detail::binary_writer w(path);
    w.magic(dataset_magic);
    w.u32(static_cast<std::uint32_t>(data.antennas));
    w.u32(static_cast<std::uint32_t>(data.subcarriers));
    w.u64(data.samples.size());
    w.f64(data.ul_plan.center_hz);
    w.f64(data.dl_plan.center_hz);
    w.f64(data.ul_plan.bandwidth_hz);
    for (const auto &s : data.samples)
    {
        if (s.h_ul.values.size() != data.antennas * data.subcarriers ||
            s.h_dl.values.size() != data.antennas * data.subcarriers)
            throw format_error("sample " + std::to_string(s.user_index) + " has the wrong tensor shape");
        if (s.user_index > u32_max)
            throw format_error("user index exceeds u32");
        w.u32(static_cast<std::uint32_t>(s.user_index));
        w.f64(s.position.x);
        w.f64(s.position.y);
        w.f64(s.position.z);
        write_tensor(w, s.h_ul);
        write_tensor(w, s.h_dl);
    }
    w.finish();
}

dataset read_dataset(const std::filesystem::path &path)
{
    detail::binary_reader r(path);
    r.expect_magic(dataset_magic);

    dataset data;
    data.antennas = r.u32();
    data.subcarriers = r.u32();
    const std::uint64_t count = r.u64();
    const double f_ul = r.f64();
    const double f_dl = r.f64();
    const double bw = r.f64();
    data.ul_plan = {f_ul, bw, data.subcarriers};
    data.dl_plan = {f_dl, bw, data.subcarriers};
    try
    {
        data.ul_plan.validate();
        data.dl_plan.validate();
    }
    catch (const error &e)
    {
        throw format_error(path.string() + ": invalid frequency header: " + e.what());
    }
    if (data.antennas == 0)
        throw format_error(path.string() + ": zero antennas in header");

    // Guard the reservation against a corrupt count.
    const auto sample_bytes = 4 + 24 + 32 * data.antennas * data.subcarriers;
    const auto file_bytes = std::filesystem::file_size(path);
    if (count > file_bytes / sample_bytes)
        throw format_error(path.string() + ": header sample count exceeds the file size");

    data.samples.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
    {
        dataset_sample s;
        s.user_index = r.u32();
        s.position.x = r.f64();
        s.position.y = r.f64();
        s.position.z = r.f64();
        s.h_ul = read_tensor(r, data.antennas, data.subcarriers);
        s.h_ul.plan = data.ul_plan;
        s.h_ul.user_index = s.user_index;
        s.h_dl = read_tensor(r, data.antennas, data.subcarriers);
        s.h_dl.plan = data.dl_plan;
        s.h_dl.user_index = s.user_index;
        data.samples.push_back(std::move(s));
    }
    r.expect_end();
    return data;
}

} // namespace chmap
