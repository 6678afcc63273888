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

#include "chmap/config.hpp"

#include "chmap/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace chmap
{

namespace
{

namespace pt = boost::property_tree;

template <typename T>
std::vector<T> parse_list(const std::string &key, const std::string &text)
{
    std::istringstream in(text);
    std::vector<T> out;
    T v{};
    while (in >> v)
        out.push_back(v);
    if (!in.eof())
        throw config_error("cannot parse value of '" + key + "': '" + text + "'");
    return out;
}

template <typename T>
T parse_scalar(const std::string &key, const std::string &text)
{
    const auto v = parse_list<T>(key, text);
    if (v.size() != 1)
        throw config_error("'" + key + "' expects a single value, got '" + text + "'");
    return v.front();
}

std::size_t parse_count(const std::string &key, const std::string &text)
{
    const auto v = parse_scalar<long long>(key, text);
    if (v < 0)
        throw config_error("'" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<std::size_t> parse_counts(const std::string &key, const std::string &text)
{
    std::vector<std::size_t> out;
    for (auto v : parse_list<long long>(key, text))
    {
        if (v < 0)
            throw config_error("'" + key + "' entries must be non-negative");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

point3 parse_point(const std::string &key, const std::string &text)
{
    const auto v = parse_list<double>(key, text);
    if (v.size() != 3)
        throw config_error("'" + key + "' expects three numbers");
    return {v[0], v[1], v[2]};
}

std::pair<double, double> parse_pair(const std::string &key, const std::string &text)
{
    const auto v = parse_list<double>(key, text);
    if (v.size() != 2)
        throw config_error("'" + key + "' expects two numbers");
    return {v[0], v[1]};
}

// Visits every key of a section, rejecting the ones `handle` does not know.
template <typename Handler>
void for_each_key(const std::string &section, const pt::ptree &tree, Handler handle)
{
    for (const auto &[key, node] : tree)
    {
        const std::string qualified = section + "." + key;
        if (!handle(key, qualified, node.data()))
            throw config_error("unknown key '" + qualified + "'");
    }
}

void read_scene(const pt::ptree &tree, scene_config &scene)
{
    std::size_t rows = 0, cols = 0;
    double spacing = 1.0, height = 2.5;
    std::pair<double, double> center{5.0, 5.0};
    bool grid_given = false;

    for_each_key("scene", tree, [&](const std::string &key, const std::string &q, const std::string &v) {
        if (key == "room_origin")
            scene.room_origin = parse_point(q, v);
        else if (key == "room_size")
            scene.room_size = parse_point(q, v);
        else if (key == "antenna_rows")
            rows = parse_count(q, v), grid_given = true;
        else if (key == "antenna_cols")
            cols = parse_count(q, v), grid_given = true;
        else if (key == "antenna_spacing")
            spacing = parse_scalar<double>(q, v), grid_given = true;
        else if (key == "antenna_center")
            center = parse_pair(q, v), grid_given = true;
        else if (key == "antenna_height")
            height = parse_scalar<double>(q, v), grid_given = true;
        else if (key == "max_reflection_order")
            scene.max_reflection_order = parse_scalar<int>(q, v);
        else if (key == "reflection_coefficient")
            scene.reflection_coefficient = parse_scalar<double>(q, v);
        else if (key == "max_paths")
            scene.max_paths = parse_count(q, v);
        else
            return false;
        return true;
    });

    if (grid_given)
    {
        if (rows == 0 || cols == 0)
            throw config_error("scene.antenna_rows and scene.antenna_cols must both be given and positive");
        scene.antennas = ceiling_grid(rows, cols, spacing, center.first, center.second, height);
    }
}

user_grid read_user_grid(const std::string &section, const pt::ptree &tree)
{
    user_grid g;
    bool has_origin = false;
    for_each_key(section, tree, [&](const std::string &key, const std::string &q, const std::string &v) {
        if (key == "origin")
            g.origin = parse_point(q, v), has_origin = true;
        else if (key == "extent")
            std::tie(g.extent_x, g.extent_y) = parse_pair(q, v);
        else if (key == "spacing")
            g.spacing = parse_scalar<double>(q, v);
        else
            return false;
        return true;
    });
    if (!has_origin)
        throw config_error("section [" + section + "] needs an origin");
    return g;
}

void read_frequency(const pt::ptree &tree, experiment_config &cfg)
{
    for_each_key("frequency", tree, [&](const std::string &key, const std::string &q, const std::string &v) {
        if (key == "ul_center_hz")
            cfg.ul_plan.center_hz = parse_scalar<double>(q, v);
        else if (key == "dl_center_hz")
            cfg.dl_plan.center_hz = parse_scalar<double>(q, v);
        else if (key == "bandwidth_hz")
            cfg.ul_plan.bandwidth_hz = cfg.dl_plan.bandwidth_hz = parse_scalar<double>(q, v);
        else if (key == "subcarriers")
            cfg.ul_plan.subcarriers = cfg.dl_plan.subcarriers = parse_count(q, v);
        else
            return false;
        return true;
    });
}

void read_train(const pt::ptree &tree, experiment_config &cfg)
{
    for_each_key("train", tree, [&](const std::string &key, const std::string &q, const std::string &v) {
        auto &t = cfg.train;
        if (key == "learning_rate")
            t.learning_rate = parse_scalar<double>(q, v);
        else if (key == "weight_decay")
            t.weight_decay = parse_scalar<double>(q, v);
        else if (key == "epochs")
            t.epochs = parse_count(q, v);
        else if (key == "batch_size")
            t.batch_size = parse_count(q, v);
        else if (key == "beta1")
            t.beta1 = parse_scalar<double>(q, v);
        else if (key == "beta2")
            t.beta2 = parse_scalar<double>(q, v);
        else if (key == "epsilon")
            t.epsilon = parse_scalar<double>(q, v);
        else if (key == "hidden")
            cfg.hidden = v == "scaled" ? std::vector<std::size_t>{} : parse_counts(q, v);
        else
            return false;
        return true;
    });
}

void read_experiment(const pt::ptree &tree, experiment_config &cfg)
{
    for_each_key("experiment", tree, [&](const std::string &key, const std::string &q, const std::string &v) {
        if (key == "mode")
            cfg.mode = parse_band_mode(v);
        else if (key == "subset_sizes")
            cfg.subset_sizes = parse_counts(q, v);
        else if (key == "draws")
            cfg.draws = parse_count(q, v);
        else if (key == "train_fractions")
            cfg.train_fractions = parse_list<double>(q, v);
        else if (key == "fraction_subset_size")
            cfg.fraction_subset_size = parse_count(q, v);
        else if (key == "snr")
            cfg.snr = parse_scalar<double>(q, v);
        else if (key == "noise_std")
            cfg.noise_std = parse_scalar<double>(q, v);
        else if (key == "seed")
            cfg.seed = parse_scalar<std::uint64_t>(q, v);
        else
            return false;
        return true;
    });
}

} // namespace

experiment_config parse_experiment_config(const std::string &text)
{
    pt::ptree root;
    try
    {
        std::istringstream in(text);
        pt::read_ini(in, root);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw config_error(std::string("config syntax error: ") + e.what());
    }

    experiment_config cfg = desk_experiment_config();
    std::vector<user_grid> grids;
    for (const auto &[name, section] : root)
    {
        if (!section.data().empty())
            throw config_error("key '" + name + "' must live inside a section");
        if (name == "scene")
            read_scene(section, cfg.scene);
        else if (name.rfind("user_grid", 0) == 0)
            grids.push_back(read_user_grid(name, section));
        else if (name == "frequency")
            read_frequency(section, cfg);
        else if (name == "train")
            read_train(section, cfg);
        else if (name == "experiment")
            read_experiment(section, cfg);
        else
            throw config_error("unknown section [" + name + "]");
    }
    if (!grids.empty())
        cfg.scene.user_grids = std::move(grids);
    cfg.validate();
    return cfg;
}

experiment_config load_experiment_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_experiment_config(buf.str());
    }
    catch (const config_error &e)
    {
        throw config_error(path.string() + ": " + e.what());
    }
}

} // namespace chmap
