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

#include "chmap/model_io.hpp"

#include "binary_io.hpp"

#include <limits>
#include <string>

namespace chmap
{

void save_model(const std::filesystem::path &path, const model_bundle &bundle)
{
    const auto &model = bundle.model;
    if (model.layers.empty())
        throw format_error("refusing to save a model without layers");
    if (model.input_dim() != 2 * bundle.antennas * bundle.subcarriers || model.output_dim() != model.input_dim())
        throw format_error("model width does not match 2 * antennas * subcarriers");
    if (bundle.mask.antennas() != bundle.antennas)
        throw format_error("mask and model disagree on the antenna count");

    detail::binary_writer w(path);
    w.magic(model_magic);
    w.u32(model_format_version);
    w.u32(static_cast<std::uint32_t>(bundle.antennas));
    w.u32(static_cast<std::uint32_t>(bundle.subcarriers));
    w.u64(bundle.split_seed);
    w.f64(bundle.stats.mean.real());
    w.f64(bundle.stats.mean.imag());
    w.f64(bundle.stats.max_abs);
    w.u32(static_cast<std::uint32_t>(bundle.mask.size()));
    for (auto m : bundle.mask.selected())
        w.u32(static_cast<std::uint32_t>(m));
    w.u32(static_cast<std::uint32_t>(model.layers.size()));
    for (const auto &l : model.layers)
    {
        w.u32(static_cast<std::uint32_t>(l.weight.cols()));
        w.u32(static_cast<std::uint32_t>(l.weight.rows()));
        w.u8(static_cast<std::uint8_t>(l.act));
    }
    for (const auto &l : model.layers)
    {
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c)
                w.f64(l.weight(r, c));
        for (Eigen::Index r = 0; r < l.bias.size(); ++r)
            w.f64(l.bias(r));
    }
    w.finish();
}

model_bundle load_model(const std::filesystem::path &path)
{
    detail::binary_reader r(path);
    r.expect_magic(model_magic);
    const std::uint32_t version = r.u32();
    if (version != model_format_version)
        throw format_error(path.string() + ": unsupported model format version " + std::to_string(version));

    model_bundle b;
    b.antennas = r.u32();
    b.subcarriers = r.u32();
    b.split_seed = r.u64();
    const double mean_re = r.f64();
    const double mean_im = r.f64();
    b.stats.mean = cplx(mean_re, mean_im);
    b.stats.max_abs = r.f64();
    if (!(b.stats.max_abs > 0.0))
        throw format_error(path.string() + ": non-positive max_abs");

    const std::uint32_t mask_count = r.u32();
    if (mask_count > b.antennas)
        throw format_error(path.string() + ": mask larger than the antenna count");
    std::vector<std::size_t> selected(mask_count);
    for (auto &m : selected)
        m = r.u32();
    try
    {
        b.mask = antenna_mask(b.antennas, std::move(selected));
    }
    catch (const error &e)
    {
        throw format_error(path.string() + ": invalid antenna mask: " + e.what());
    }

    const std::uint32_t layer_count = r.u32();
    if (layer_count == 0 || layer_count > 1024)
        throw format_error(path.string() + ": implausible layer count " + std::to_string(layer_count));
    std::vector<layer_spec> specs(layer_count);
    for (auto &s : specs)
    {
        s.input_dim = r.u32();
        s.output_dim = r.u32();
        const auto act = r.u8();
        if (act > static_cast<std::uint8_t>(activation::relu))
            throw format_error(path.string() + ": unknown activation code " + std::to_string(act));
        s.act = static_cast<activation>(act);
    }
    for (std::size_t i = 0; i < specs.size(); ++i)
        if (specs[i].input_dim == 0 || specs[i].output_dim == 0 ||
            (i > 0 && specs[i].input_dim != specs[i - 1].output_dim))
            throw format_error(path.string() + ": layer dimensions do not chain");
    if (specs.front().input_dim != 2 * b.antennas * b.subcarriers || specs.back().output_dim != specs.front().input_dim)
        throw format_error(path.string() + ": model width does not match 2 * antennas * subcarriers");

    std::uintmax_t expected = 0;
    for (const auto &s : specs)
        expected += (s.input_dim + 1) * s.output_dim * 8;
    if (expected > std::filesystem::file_size(path))
        throw format_error(path.string() + ": file too short for the declared layers");

    for (const auto &s : specs)
    {
        dense_layer l;
        l.act = s.act;
        l.weight.resize(static_cast<Eigen::Index>(s.output_dim), static_cast<Eigen::Index>(s.input_dim));
        l.bias.resize(static_cast<Eigen::Index>(s.output_dim));
        for (Eigen::Index row = 0; row < l.weight.rows(); ++row)
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c)
                l.weight(row, c) = r.f64();
        for (Eigen::Index row = 0; row < l.bias.size(); ++row)
            l.bias(row) = r.f64();
        b.model.layers.push_back(std::move(l));
    }
    r.expect_end();
    return b;
}

} // namespace chmap
