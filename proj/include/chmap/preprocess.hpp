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

#ifndef CHMAP_PREPROCESS_HPP
#define CHMAP_PREPROCESS_HPP

#include "chmap/channel.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace chmap
{

// Global centering and scaling shared by uplink and downlink tensors.
struct norm_stats
{
    cplx mean{0.0, 0.0};
    double max_abs = 1.0; // max |h - mean| over the fitted entries
};

// Mean over every entry of h_ul and h_dl of the selected samples, then the
// centered max-abs. Throws empty_dataset, degenerate_dataset.
norm_stats fit_stats(const dataset &data, std::span<const std::size_t> indices);
norm_stats fit_stats(const dataset &data);

// The set of measured antennas; rows outside it are zeroed.
class antenna_mask
{
public:
    antenna_mask() = default;
    // Sorts and checks 1 <= |selected| <= antennas, indices distinct and < antennas.
    antenna_mask(std::size_t antennas, std::vector<std::size_t> selected);

    static antenna_mask full(std::size_t antennas);

    std::size_t antennas() const noexcept { return antennas_; }
    const std::vector<std::size_t> &selected() const noexcept { return selected_; }
    std::size_t size() const noexcept { return selected_.size(); }
    bool contains(std::size_t m) const noexcept { return m < rows_.size() && rows_[m]; }

    friend bool operator==(const antenna_mask &a, const antenna_mask &b)
    {
        return a.antennas_ == b.antennas_ && a.selected_ == b.selected_;
    }

private:
    std::size_t antennas_ = 0;
    std::vector<std::size_t> selected_;
    std::vector<bool> rows_;
};

// Real M x K x 2 array; layout antenna-major, then subcarrier, then (re, im).
struct real_tensor
{
    std::size_t antennas = 0;
    std::size_t subcarriers = 0;
    std::vector<double> data;

    real_tensor() = default;
    real_tensor(std::size_t m, std::size_t k) : antennas(m), subcarriers(k), data(2 * m * k, 0.0) {}

    std::size_t index(std::size_t m, std::size_t k, std::size_t part) const { return (m * subcarriers + k) * 2 + part; }
    double &operator()(std::size_t m, std::size_t k, std::size_t part) { return data[index(m, k, part)]; }
    double operator()(std::size_t m, std::size_t k, std::size_t part) const { return data[index(m, k, part)]; }
};

// (h - mean) / max_abs split into (re, im).
real_tensor normalize(const channel_tensor &h, const norm_stats &stats);

// Inverse of normalize; the returned tensor carries no plan or user index.
channel_tensor denormalize(const real_tensor &t, const norm_stats &stats);

// Elementwise product with the binary mask U. Throws shape_mismatch.
real_tensor apply_mask(const real_tensor &t, const antenna_mask &mask);

std::vector<double> flatten(const real_tensor &t);

// Throws shape_mismatch unless v.size() == 2 * antennas * subcarriers.
real_tensor unflatten(std::span<const double> v, std::size_t antennas, std::size_t subcarriers);

} // namespace chmap

#endif
