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

#ifndef CHMAP_CHANNEL_HPP
#define CHMAP_CHANNEL_HPP

#include "chmap/scene.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace chmap
{

using cplx = std::complex<double>;

struct frequency_plan
{
    double center_hz = 2.5e9;
    double bandwidth_hz = 20e6;
    std::size_t subcarriers = 64;

    double spacing_hz() const { return bandwidth_hz / static_cast<double>(subcarriers); }
    // Subcarrier k sits at center + k * spacing, k = 0..K-1.
    double subcarrier_hz(std::size_t k) const { return center_hz + static_cast<double>(k) * spacing_hz(); }

    // Throws invalid_argument unless K >= 1, BW > 0 and f_center > BW.
    void validate() const;
};

// Complex channel over antennas x subcarriers, antenna-major. std::complex<double>
// is layout-compatible with interleaved (re, im) doubles.
struct channel_tensor
{
    std::size_t antennas = 0;
    std::size_t subcarriers = 0;
    std::vector<cplx> values;
    frequency_plan plan;
    std::size_t user_index = 0;

    channel_tensor() = default;
    channel_tensor(std::size_t m, std::size_t k) : antennas(m), subcarriers(k), values(m * k) {}

    cplx &operator()(std::size_t m, std::size_t k) { return values[m * subcarriers + k]; }
    const cplx &operator()(std::size_t m, std::size_t k) const { return values[m * subcarriers + k]; }

    std::span<cplx> row(std::size_t m) { return {values.data() + m * subcarriers, subcarriers}; }
    std::span<const cplx> row(std::size_t m) const { return {values.data() + m * subcarriers, subcarriers}; }
};

struct dataset_sample
{
    std::size_t user_index = 0;
    point3 position;
    channel_tensor h_ul;
    channel_tensor h_dl;
};

struct dataset
{
    std::size_t antennas = 0;
    std::size_t subcarriers = 0;
    frequency_plan ul_plan;
    frequency_plan dl_plan;
    std::vector<dataset_sample> samples;

    std::size_t size() const noexcept { return samples.size(); }
};

// sum_l |a_l| e^{j phi_l} e^{-j 2 pi (f_c + k df) tau_l} for k = 0..K-1.
std::vector<cplx> synthesize_channel(std::span<const path> paths, const frequency_plan &plan);

// Same sum at arbitrary frequencies, without plan validation.
std::vector<cplx> synthesize_at_frequencies(std::span<const path> paths, std::span<const double> frequencies_hz);

channel_tensor synthesize_tensor(const scene &s, std::size_t user_index, const frequency_plan &plan);

// One sample per scene user. Only h_ul receives the optional circularly
// symmetric Gaussian perturbation (E|n|^2 = noise_std^2); the stream for each
// user is derived from (seed, user_index).
dataset build_dataset(const scene &s, const frequency_plan &ul_plan, const frequency_plan &dl_plan,
                      double noise_std = 0.0, std::uint64_t seed = 0);

struct bijectivity_report
{
    std::vector<std::size_t> subset;
    double min_pairwise_distance = 0.0;
    std::size_t user_a = 0; // dataset positions of the closest pair
    std::size_t user_b = 0;
    bool verdict = false;
};

// Exhaustive scan of the Frobenius distance between uplink tensors restricted
// to the rows in `subset`, over all distinct sample pairs.
bijectivity_report check_bijectivity(const dataset &data, std::span<const std::size_t> subset,
                                     double tolerance = 1e-9);

} // namespace chmap

#endif
