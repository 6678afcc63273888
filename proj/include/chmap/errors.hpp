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

#ifndef CHMAP_ERRORS_HPP
#define CHMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chmap
{

// Base class of every error raised by the library. The CLI maps any of these
// onto a nonzero exit code with a one-line diagnostic.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define CHMAP_DEFINE_ERROR(name)          \
    class name : public error             \
    {                                     \
    public:                               \
        using error::error;               \
    }

CHMAP_DEFINE_ERROR(invalid_geometry);
CHMAP_DEFINE_ERROR(invalid_argument);
CHMAP_DEFINE_ERROR(insufficient_samples);
CHMAP_DEFINE_ERROR(empty_dataset);
CHMAP_DEFINE_ERROR(degenerate_dataset);
CHMAP_DEFINE_ERROR(shape_mismatch);
CHMAP_DEFINE_ERROR(dimension_mismatch);
CHMAP_DEFINE_ERROR(incompatible_dims);
CHMAP_DEFINE_ERROR(zero_target);
CHMAP_DEFINE_ERROR(zero_channel);
CHMAP_DEFINE_ERROR(format_error);
CHMAP_DEFINE_ERROR(config_error);

#undef CHMAP_DEFINE_ERROR

} // namespace chmap

#endif
