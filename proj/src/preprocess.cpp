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

#include "chmap/preprocess.hpp"

#include "chmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace chmap
{

norm_stats fit_stats(const dataset &data, std::span<const std::size_t> indices)
{
    if (indices.empty())
        throw empty_dataset("cannot fit normalization statistics on an empty training set");

    cplx sum{0.0, 0.0};
    std::size_t count = 0;
    for (auto i : indices)
    {
        const auto &s = data.samples.at(i);
        for (const auto &v : s.h_ul.values)
            sum += v;
        for (const auto &v : s.h_dl.values)
            sum += v;
        count += s.h_ul.values.size() + s.h_dl.values.size();
    }
    if (count == 0)
        throw empty_dataset("training samples hold no channel entries");

    norm_stats stats;
    stats.mean = sum / static_cast<double>(count);
    double max_abs = 0.0;
    for (auto i : indices)
    {
        const auto &s = data.samples[i];
        for (const auto &v : s.h_ul.values)
            max_abs = std::max(max_abs, std::abs(v - stats.mean));
        for (const auto &v : s.h_dl.values)
            max_abs = std::max(max_abs, std::abs(v - stats.mean));
    }
    if (!(max_abs > 0.0) || !std::isfinite(max_abs))
        throw degenerate_dataset("all training entries are equal; max |h - mean| is zero");
    stats.max_abs = max_abs;
    return stats;
}

norm_stats fit_stats(const dataset &data)
{
    std::vector<std::size_t> all(data.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return fit_stats(data, all);
}

antenna_mask::antenna_mask(std::size_t antennas, std::vector<std::size_t> selected)
    : antennas_(antennas), selected_(std::move(selected)), rows_(antennas, false)
{
    std::sort(selected_.begin(), selected_.end());
    if (selected_.empty())
        throw invalid_argument("antenna mask must select at least one antenna");
    if (selected_.size() > antennas)
        throw invalid_argument("antenna mask selects more antennas than exist");
    if (std::adjacent_find(selected_.begin(), selected_.end()) != selected_.end())
        throw invalid_argument("antenna mask has duplicate indices");
    if (selected_.back() >= antennas)
        throw invalid_argument("antenna index " + std::to_string(selected_.back()) + " out of range");
    for (auto m : selected_)
        rows_[m] = true;
}

antenna_mask antenna_mask::full(std::size_t antennas)
{
    std::vector<std::size_t> all(antennas);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return antenna_mask(antennas, std::move(all));
}

real_tensor normalize(const channel_tensor &h, const norm_stats &stats)
{
    real_tensor out(h.antennas, h.subcarriers);
    for (std::size_t i = 0; i < h.values.size(); ++i)
    {
        const cplx v = (h.values[i] - stats.mean) / stats.max_abs;
        out.data[2 * i] = v.real();
        out.data[2 * i + 1] = v.imag();
    }
    return out;
}

channel_tensor denormalize(const real_tensor &t, const norm_stats &stats)
{
    channel_tensor out(t.antennas, t.subcarriers);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = cplx(t.data[2 * i], t.data[2 * i + 1]) * stats.max_abs + stats.mean;
    return out;
}

real_tensor apply_mask(const real_tensor &t, const antenna_mask &mask)
{
    if (t.antennas != mask.antennas())
        throw shape_mismatch("mask covers " + std::to_string(mask.antennas()) + " antennas, tensor has " +
                             std::to_string(t.antennas));
    real_tensor out = t;
    for (std::size_t m = 0; m < t.antennas; ++m)
        if (!mask.contains(m))
            std::fill_n(out.data.begin() + static_cast<std::ptrdiff_t>(2 * m * t.subcarriers), 2 * t.subcarriers, 0.0);
    return out;
}

std::vector<double> flatten(const real_tensor &t)
{
    return t.data;
}

real_tensor unflatten(std::span<const double> v, std::size_t antennas, std::size_t subcarriers)
{
    if (v.size() != 2 * antennas * subcarriers)
        throw shape_mismatch("vector of length " + std::to_string(v.size()) + " does not hold a " +
                             std::to_string(antennas) + " x " + std::to_string(subcarriers) + " x 2 tensor");
    real_tensor out(antennas, subcarriers);
    std::copy(v.begin(), v.end(), out.data.begin());
    return out;
}

} // namespace chmap
