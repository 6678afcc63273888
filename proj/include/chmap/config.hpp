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

#ifndef CHMAP_CONFIG_HPP
#define CHMAP_CONFIG_HPP

#include "chmap/pipeline.hpp"

#include <filesystem>
#include <string>

namespace chmap
{

// INI-style key = value files; every key is optional and falls back to
// desk_experiment_config(). Unknown sections or keys are rejected. See
// docs/config.md for the schema. Throws config_error.
experiment_config parse_experiment_config(const std::string &text);
experiment_config load_experiment_config(const std::filesystem::path &path);

} // namespace chmap

#endif
