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

#include "chmap/channel.hpp"

#include "chmap/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace chmap
{

void frequency_plan::validate() const
{
    if (subcarriers < 1)
        throw invalid_argument("frequency plan needs at least one subcarrier");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw invalid_argument("bandwidth must be positive");
    if (!(center_hz > bandwidth_hz) || !std::isfinite(center_hz))
        throw invalid_argument("center frequency must exceed the bandwidth");
}

std::vector<cplx> synthesize_at_frequencies(std::span<const path> paths, std::span<const double> frequencies_hz)
{
    std::vector<cplx> h(frequencies_hz.size(), cplx(0.0, 0.0));
    for (const auto &p : paths)
    {
        const cplx alpha = std::polar(p.gain_magnitude, p.phase);
        for (std::size_t k = 0; k < frequencies_hz.size(); ++k)
        {
            // f * tau is a few hundred cycles; reducing it in extended precision
            // keeps the phase accurate to ~1e-16 rad instead of ~1e-13.
            const long double cycles = static_cast<long double>(frequencies_hz[k]) * p.delay;
            const double fraction = static_cast<double>(cycles - std::floor(cycles));
            h[k] += alpha * std::polar(1.0, -2.0 * pi * fraction);
        }
    }
    return h;
}

std::vector<cplx> synthesize_channel(std::span<const path> paths, const frequency_plan &plan)
{
    if (paths.empty())
        throw invalid_argument("cannot synthesize a channel from an empty path set");
    plan.validate();

    std::vector<double> freqs(plan.subcarriers);
    for (std::size_t k = 0; k < plan.subcarriers; ++k)
        freqs[k] = plan.subcarrier_hz(k);
    return synthesize_at_frequencies(paths, freqs);
}

channel_tensor synthesize_tensor(const scene &s, std::size_t user_index, const frequency_plan &plan)
{
    if (user_index >= s.num_users())
        throw invalid_argument("user index " + std::to_string(user_index) + " out of range");
    channel_tensor t(s.num_antennas(), plan.subcarriers);
    t.plan = plan;
    t.user_index = user_index;
    const point3 &u = s.users()[user_index];
    for (std::size_t m = 0; m < s.num_antennas(); ++m)
    {
        const auto h = synthesize_channel(compute_paths(s, u, m, plan.center_hz), plan);
        std::copy(h.begin(), h.end(), t.row(m).begin());
    }
    return t;
}

dataset build_dataset(const scene &s, const frequency_plan &ul_plan, const frequency_plan &dl_plan,
                      double noise_std, std::uint64_t seed)
{
    ul_plan.validate();
    dl_plan.validate();
    if (ul_plan.subcarriers != dl_plan.subcarriers || ul_plan.bandwidth_hz != dl_plan.bandwidth_hz)
        throw invalid_argument("uplink and downlink plans must share bandwidth and subcarrier count");
    if (!(noise_std >= 0.0) || !std::isfinite(noise_std))
        throw invalid_argument("noise_std must be non-negative");

    dataset out;
    out.antennas = s.num_antennas();
    out.subcarriers = ul_plan.subcarriers;
    out.ul_plan = ul_plan;
    out.dl_plan = dl_plan;
    out.samples.reserve(s.num_users());

    const bool same_band = ul_plan.center_hz == dl_plan.center_hz;
    for (std::size_t u = 0; u < s.num_users(); ++u)
    {
        dataset_sample sample;
        sample.user_index = u;
        sample.position = s.users()[u];
        sample.h_dl = synthesize_tensor(s, u, dl_plan);
        sample.h_ul = same_band ? sample.h_dl : synthesize_tensor(s, u, ul_plan);
        sample.h_ul.plan = ul_plan;

        if (noise_std > 0.0)
        {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(std::uint64_t(u) >> 32)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> normal(0.0, noise_std / std::sqrt(2.0));
            for (auto &v : sample.h_ul.values)
            {
                const double re = normal(rng);
                const double im = normal(rng);
                v += cplx(re, im);
            }
        }
        out.samples.push_back(std::move(sample));
    }
    return out;
}

bijectivity_report check_bijectivity(const dataset &data, std::span<const std::size_t> subset, double tolerance)
{
    if (data.size() < 2)
        throw insufficient_samples("bijectivity check needs at least two samples");
    if (subset.empty())
        throw invalid_argument("antenna subset is empty");
    for (auto m : subset)
        if (m >= data.antennas)
            throw invalid_argument("antenna index " + std::to_string(m) + " out of range");

    const std::size_t k_count = data.subcarriers;
    const std::size_t width = subset.size() * k_count;
    const std::size_t n = data.size();

    // Gather the restricted rows contiguously once.
    std::vector<cplx> rows(n * width);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < subset.size(); ++s)
        {
            const auto src = data.samples[i].h_ul.row(subset[s]);
            std::copy(src.begin(), src.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * width + s * k_count));
        }

    bijectivity_report rep;
    rep.subset.assign(subset.begin(), subset.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
    {
        const cplx *a = rows.data() + i * width;
        for (std::size_t j = i + 1; j < n; ++j)
        {
            const cplx *b = rows.data() + j * width;
            double acc = 0.0;
            for (std::size_t e = 0; e < width && acc < best; ++e)
                acc += std::norm(a[e] - b[e]);
            if (acc < best)
            {
                best = acc;
                rep.user_a = i;
                rep.user_b = j;
            }
        }
    }
    rep.min_pairwise_distance = std::sqrt(best);
    rep.verdict = rep.min_pairwise_distance > tolerance;
    return rep;
}

} // namespace chmap
