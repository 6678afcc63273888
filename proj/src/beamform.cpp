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

#include <cmath>

namespace chmap
{

namespace
{

void check_snr(double snr)
{
    if (!(snr > 0.0) || !std::isfinite(snr))
        throw invalid_argument("snr must be positive and finite");
}

double column_energy(const channel_tensor &h, std::size_t k)
{
    double e = 0.0;
    for (std::size_t m = 0; m < h.antennas; ++m)
        e += std::norm(h(m, k));
    return e;
}

} // namespace

beamformer_set conjugate_weights(const channel_tensor &h)
{
    beamformer_set v{h.antennas, h.subcarriers, std::vector<cplx>(h.values.size())};
    for (std::size_t k = 0; k < h.subcarriers; ++k)
    {
        const double kappa = std::sqrt(column_energy(h, k));
        if (!(kappa > 0.0))
            throw zero_channel("subcarrier " + std::to_string(k) + " has an all-zero channel column");
        for (std::size_t m = 0; m < h.antennas; ++m)
            v(m, k) = std::conj(h(m, k)) / kappa;
    }
    return v;
}

double matched_rate(const channel_tensor &h, double snr)
{
    check_snr(snr);
    if (h.subcarriers == 0)
        throw shape_mismatch("channel has no subcarriers");
    double sum = 0.0;
    for (std::size_t k = 0; k < h.subcarriers; ++k)
        sum += std::log2(1.0 + snr * column_energy(h, k));
    return sum / static_cast<double>(h.subcarriers);
}

double mismatched_rate(const channel_tensor &h_true, const beamformer_set &v, double snr)
{
    check_snr(snr);
    if (h_true.antennas != v.antennas || h_true.subcarriers != v.subcarriers || h_true.subcarriers == 0)
        throw shape_mismatch("beamformer shape does not match the channel");
    double sum = 0.0;
    for (std::size_t k = 0; k < h_true.subcarriers; ++k)
    {
        // Received amplitude sum_m h_m v_m; with v = conj(h) / kappa it is ||h||.
        cplx inner{0.0, 0.0};
        for (std::size_t m = 0; m < h_true.antennas; ++m)
            inner += h_true(m, k) * v(m, k);
        sum += std::log2(1.0 + snr * std::norm(inner));
    }
    return sum / static_cast<double>(h_true.subcarriers);
}

double lower_bound_rate(const channel_tensor &h_true, std::span<const std::size_t> subset, double snr)
{
    channel_tensor restricted(subset.size(), h_true.subcarriers);
    for (std::size_t i = 0; i < subset.size(); ++i)
    {
        if (subset[i] >= h_true.antennas)
            throw invalid_argument("antenna index " + std::to_string(subset[i]) + " out of range");
        const auto src = h_true.row(subset[i]);
        std::copy(src.begin(), src.end(), restricted.row(i).begin());
    }
    return matched_rate(restricted, snr);
}

} // namespace chmap
