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

#include "chmap/scene.hpp"

#include "chmap/errors.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace chmap
{

namespace
{

std::size_t grid_count(double extent, double spacing)
{
    return static_cast<std::size_t>(std::llround(extent / spacing)) + 1;
}

std::string to_string(const point3 &p)
{
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
}

double wrap_phase(double phi)
{
    return phi - 2.0 * pi * std::floor((phi + pi) / (2.0 * pi));
}

struct image_coordinate
{
    double value;
    int bounces;
};

// Images of `a` along one axis of a box [0, size]: (1 - 2p) a + 2 n size with
// |2n - p| wall bounces.
std::vector<image_coordinate> axis_images(double a, double size, int max_order)
{
    std::vector<image_coordinate> out;
    for (int n = -max_order; n <= max_order; ++n)
        for (int p = 0; p <= 1; ++p)
        {
            const int bounces = std::abs(2 * n - p);
            if (bounces > max_order)
                continue;
            out.push_back({(1 - 2 * p) * a + 2.0 * n * size, bounces});
        }
    return out;
}

} // namespace

std::size_t user_grid::count_x() const { return grid_count(extent_x, spacing); }
std::size_t user_grid::count_y() const { return grid_count(extent_y, spacing); }

std::vector<point3> ceiling_grid(std::size_t rows, std::size_t cols, double spacing,
                                 double center_x, double center_y, double height)
{
    std::vector<point3> out;
    out.reserve(rows * cols);
    const double x0 = center_x - 0.5 * spacing * static_cast<double>(cols - 1);
    const double y0 = center_y - 0.5 * spacing * static_cast<double>(rows - 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out.push_back({x0 + spacing * static_cast<double>(c), y0 + spacing * static_cast<double>(r), height});
    return out;
}

scene_config default_scene_config()
{
    scene_config cfg;
    cfg.antennas = ceiling_grid(8, 8, 1.0, 5.0, 5.0, 2.5);
    cfg.user_grids = {
        {{1.013, 1.527, 1.0}, 1.0, 0.5, 0.01},
        {{6.071, 7.239, 1.0}, 1.0, 0.5, 0.01},
    };
    return cfg;
}

scene_config desk_scene_config()
{
    scene_config cfg;
    cfg.antennas = ceiling_grid(4, 4, 1.0, 5.0, 5.0, 2.5);
    // Sub-centimetre origin offsets: no lattice user is the exact mirror image
    // of another across a vertical plane through two antennas, where a
    // single-path channel on that pair would be identical.
    cfg.user_grids = {
        {{3.7134, 4.1271, 1.0}, 0.31, 0.31, 0.01},
        {{5.8617, 5.2393, 1.0}, 0.31, 0.31, 0.01},
    };
    return cfg;
}

scene::scene(scene_config config) : config_(std::move(config))
{
    const auto &room = config_.room_size;
    if (!config_.room_origin.is_finite() || !room.is_finite() || room.x <= 0.0 || room.y <= 0.0 || room.z <= 0.0)
        throw invalid_geometry("room size must be positive and finite");
    if (config_.antennas.empty())
        throw invalid_geometry("scene has no antennas");
    if (config_.max_reflection_order < 0)
        throw invalid_geometry("max_reflection_order must be non-negative");
    if (!(config_.reflection_coefficient > 0.0 && config_.reflection_coefficient <= 1.0))
        throw invalid_geometry("reflection_coefficient must lie in (0, 1]");
    if (config_.max_paths < 1)
        throw invalid_geometry("max_paths must be at least 1");

    for (std::size_t m = 0; m < config_.antennas.size(); ++m)
        if (!contains(config_.antennas[m]))
            throw invalid_geometry("antenna " + std::to_string(m) + " at " + to_string(config_.antennas[m]) +
                                   " is outside the room");

    for (const auto &grid : config_.user_grids)
    {
        if (!(grid.spacing > 0.0) || !(grid.extent_x >= 0.0) || !(grid.extent_y >= 0.0))
            throw invalid_geometry("user grid needs positive spacing and non-negative extents");
        const std::size_t nx = grid.count_x(), ny = grid.count_y();
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t ix = 0; ix < nx; ++ix)
            {
                const point3 p{grid.origin.x + grid.spacing * static_cast<double>(ix),
                               grid.origin.y + grid.spacing * static_cast<double>(iy), grid.origin.z};
                if (!contains(p))
                    throw invalid_geometry("user point " + to_string(p) + " is outside the room");
                users_.push_back(p);
            }
    }
    if (users_.empty())
        throw invalid_geometry("scene has no user positions");
}

bool scene::contains(const point3 &p) const noexcept
{
    const auto &o = config_.room_origin;
    const auto &s = config_.room_size;
    return p.is_finite() && p.x > o.x && p.x < o.x + s.x && p.y > o.y && p.y < o.y + s.y && p.z > o.z &&
           p.z < o.z + s.z;
}

path_set enumerate_paths(const scene &s, const point3 &user, std::size_t antenna_index, double carrier_hz)
{
    if (antenna_index >= s.num_antennas())
        throw invalid_argument("antenna index " + std::to_string(antenna_index) + " out of range");
    if (!s.contains(user))
        throw invalid_geometry("user " + to_string(user) + " is outside the room");
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw invalid_argument("carrier frequency must be positive");

    const auto &cfg = s.config();
    const int order = cfg.max_reflection_order;
    // Room-local coordinates keep the geometry invariant under translation.
    const point3 a = s.antennas()[antenna_index] - cfg.room_origin;
    const point3 u = user - cfg.room_origin;

    const auto ix = axis_images(a.x, cfg.room_size.x, order);
    const auto iy = axis_images(a.y, cfg.room_size.y, order);
    const auto iz = axis_images(a.z, cfg.room_size.z, order);

    const double wavelength = speed_of_light / carrier_hz;
    path_set out;
    for (const auto &cx : ix)
        for (const auto &cy : iy)
            for (const auto &cz : iz)
            {
                const int r = cx.bounces + cy.bounces + cz.bounces;
                if (r > order)
                    continue;
                path p;
                p.distance = (point3{cx.value, cy.value, cz.value} - u).norm();
                p.delay = p.distance / speed_of_light;
                p.gain_magnitude = wavelength / (4.0 * pi * p.distance) * std::pow(cfg.reflection_coefficient, r);
                p.phase = wrap_phase(pi * r);
                p.reflection_order = r;
                out.push_back(p);
            }
    return out;
}

path_set compute_paths(const scene &s, const point3 &user, std::size_t antenna_index, double carrier_hz)
{
    path_set paths = enumerate_paths(s, user, antenna_index, carrier_hz);
    std::stable_sort(paths.begin(), paths.end(),
                     [](const path &l, const path &r) { return l.gain_magnitude > r.gain_magnitude; });
    if (paths.size() > s.config().max_paths)
        paths.resize(s.config().max_paths);
    return paths;
}

} // namespace chmap
