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

#ifndef CHMAP_MODEL_IO_HPP
#define CHMAP_MODEL_IO_HPP

#include "chmap/mlp.hpp"
#include "chmap/preprocess.hpp"

#include <cstdint>
#include <filesystem>

namespace chmap
{

inline constexpr char model_magic[] = "CHMAPMDL";
inline constexpr std::uint32_t model_format_version = 1;

// Everything prediction mode needs to reproduce training-time behaviour.
struct model_bundle
{
    mlp_model model;
    norm_stats stats;
    antenna_mask mask;
    std::size_t antennas = 0;
    std::size_t subcarriers = 0;
    std::uint64_t split_seed = 0; // recovers the train/test split of the source dataset
};

// Byte layout is documented in docs/formats.md. Throws format_error.
void save_model(const std::filesystem::path &path, const model_bundle &bundle);
model_bundle load_model(const std::filesystem::path &path);

} // namespace chmap

#endif
