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

#ifndef CHMAP_SCENE_HPP
#define CHMAP_SCENE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace chmap
{

inline constexpr double speed_of_light = 299792458.0; // m/s, exact
inline constexpr double pi = 3.14159265358979323846;

struct point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend point3 operator+(const point3 &a, const point3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend point3 operator-(const point3 &a, const point3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend bool operator==(const point3 &, const point3 &) = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

// Axis-aligned horizontal grid of candidate user positions. Points are
// enumerated row-major: index = iy * count_x() + ix.
struct user_grid
{
    point3 origin;
    double extent_x = 0.0; // meters
    double extent_y = 0.0;
    double spacing = 0.01;

    std::size_t count_x() const;
    std::size_t count_y() const;
    std::size_t size() const { return count_x() * count_y(); }
};

struct scene_config
{
    point3 room_origin;                // lower corner of the box
    point3 room_size{10.0, 10.0, 3.0}; // (Lx, Ly, Lz)
    std::vector<point3> antennas;
    std::vector<user_grid> user_grids;
    int max_reflection_order = 2;
    double reflection_coefficient = 0.5;
    std::size_t max_paths = 5;
};

// rows x cols antennas at `spacing`, centered on (center_x, center_y), all at `height`.
std::vector<point3> ceiling_grid(std::size_t rows, std::size_t cols, double spacing,
                                 double center_x, double center_y, double height);

// 10 x 10 x 3 m room, 8 x 8 ceiling antennas at 2.5 m, two user grids at 1 m.
scene_config default_scene_config();

// 4 x 4 ceiling antennas, two 32 x 32 user grids at 1 cm spacing (2048 users).
scene_config desk_scene_config();

class scene
{
public:
    // Throws invalid_geometry.
    explicit scene(scene_config config);

    const scene_config &config() const noexcept { return config_; }
    const std::vector<point3> &antennas() const noexcept { return config_.antennas; }
    const std::vector<point3> &users() const noexcept { return users_; }
    std::size_t num_antennas() const noexcept { return config_.antennas.size(); }
    std::size_t num_users() const noexcept { return users_.size(); }

    // Strictly inside the room box.
    bool contains(const point3 &p) const noexcept;

private:
    scene_config config_;
    std::vector<point3> users_;
};

inline scene build_scene(scene_config config) { return scene(std::move(config)); }

struct path
{
    double distance = 0.0;       // meters
    double delay = 0.0;          // seconds
    double gain_magnitude = 0.0; // |alpha|
    double phase = 0.0;          // radians, [-pi, pi)
    int reflection_order = 0;
};

// At most max_paths entries, sorted by descending gain_magnitude.
using path_set = std::vector<path>;

// LOS plus image-method specular reflections off the six walls.
path_set compute_paths(const scene &s, const point3 &user, std::size_t antenna_index, double carrier_hz);

// Every image candidate up to the reflection order, before sorting and truncation.
path_set enumerate_paths(const scene &s, const point3 &user, std::size_t antenna_index, double carrier_hz);

} // namespace chmap

#endif
