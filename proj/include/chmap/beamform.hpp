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

#ifndef CHMAP_BEAMFORM_HPP
#define CHMAP_BEAMFORM_HPP

#include "chmap/channel.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace chmap
{

// Per-subcarrier unit-norm transmit weights, antenna-major like channel_tensor.
struct beamformer_set
{
    std::size_t antennas = 0;
    std::size_t subcarriers = 0;
    std::vector<cplx> weights;

    cplx &operator()(std::size_t m, std::size_t k) { return weights[m * subcarriers + k]; }
    const cplx &operator()(std::size_t m, std::size_t k) const { return weights[m * subcarriers + k]; }
};

// v_{m,k} = conj(h_{m,k}) / ||h_{., k}||. Throws zero_channel.
beamformer_set conjugate_weights(const channel_tensor &h);

// Perfect-knowledge rate (1/K) sum_k log2(1 + snr ||h_{., k}||^2).
double matched_rate(const channel_tensor &h, double snr);

// (1/K) sum_k log2(1 + snr |sum_m h_{m,k} v_{m,k}|^2). Throws shape_mismatch.
double mismatched_rate(const channel_tensor &h_true, const beamformer_set &v, double snr);

// matched_rate over the rows in `subset` only.
double lower_bound_rate(const channel_tensor &h_true, std::span<const std::size_t> subset, double snr);

// Mean rates over a set of test users for one experiment point.
struct rate_report
{
    std::string label;
    std::vector<std::size_t> subset;
    double snr = 1.0;
    double rate_predicted = 0.0;
    double rate_upper = 0.0;
    double rate_lower = 0.0;
};

} // namespace chmap

#endif
