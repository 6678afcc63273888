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

#ifndef CHMAP_DATASET_IO_HPP
#define CHMAP_DATASET_IO_HPP

#include "chmap/channel.hpp"

#include <filesystem>

namespace chmap
{

inline constexpr char dataset_magic[] = "CHMAPDS1";

// Byte layout is documented in docs/formats.md. Throws format_error.
void write_dataset(const std::filesystem::path &path, const dataset &data);
dataset read_dataset(const std::filesystem::path &path);

} // namespace chmap

#endif
