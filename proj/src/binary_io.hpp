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

// Little-endian primitive readers and writers shared by the dataset and model
// file formats. Internal header.

#ifndef CHMAP_BINARY_IO_HPP
#define CHMAP_BINARY_IO_HPP

#include "chmap/errors.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace chmap::detail
{

inline constexpr std::size_t magic_size = 8;

template <typename UInt>
UInt to_little(UInt v)
{
    if constexpr (std::endian::native == std::endian::little)
        return v;
    UInt out = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i)
        out = static_cast<UInt>((out << 8) | ((v >> (8 * i)) & 0xff));
    return out;
}

class binary_writer
{
public:
    explicit binary_writer(const std::filesystem::path &path) : path_(path), out_(path, std::ios::binary | std::ios::trunc)
    {
        if (!out_)
            throw format_error("cannot open " + path.string() + " for writing");
    }

    void magic(std::string_view tag)
    {
        std::array<char, magic_size> buf{};
        std::memcpy(buf.data(), tag.data(), std::min(tag.size(), magic_size));
        out_.write(buf.data(), magic_size);
    }
    void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
    void u32(std::uint32_t v) { raw(to_little(v)); }
    void u64(std::uint64_t v) { raw(to_little(v)); }
    void f64(double v) { raw(to_little(std::bit_cast<std::uint64_t>(v))); }

    void finish()
    {
        out_.flush();
        if (!out_)
            throw format_error("write to " + path_.string() + " failed");
    }

private:
    template <typename T>
    void raw(T v)
    {
        out_.write(reinterpret_cast<const char *>(&v), sizeof(T));
    }

    std::filesystem::path path_;
    std::ofstream out_;
};

class binary_reader
{
public:
    explicit binary_reader(const std::filesystem::path &path) : path_(path), in_(path, std::ios::binary)
    {
        if (!in_)
            throw format_error("cannot open " + path.string());
    }

    void expect_magic(std::string_view tag)
    {
        std::array<char, magic_size> buf{}, want{};
        std::memcpy(want.data(), tag.data(), std::min(tag.size(), magic_size));
        read(buf.data(), magic_size);
        if (buf != want)
            throw format_error(path_.string() + ": bad magic tag, expected " + std::string(tag));
    }
    std::uint8_t u8()
    {
        char c = 0;
        read(&c, 1);
        return static_cast<std::uint8_t>(c);
    }
    std::uint32_t u32() { return to_little(raw<std::uint32_t>()); }
    std::uint64_t u64() { return to_little(raw<std::uint64_t>()); }
    double f64() { return std::bit_cast<double>(to_little(raw<std::uint64_t>())); }

    void expect_end()
    {
        if (in_.peek() != std::ifstream::traits_type::eof())
            throw format_error(path_.string() + ": trailing bytes after the last record");
    }

private:
    template <typename T>
    T raw()
    {
        T v{};
        read(reinterpret_cast<char *>(&v), sizeof(T));
        return v;
    }
    void read(char *dst, std::size_t n)
    {
        in_.read(dst, static_cast<std::streamsize>(n));
        if (in_.gcount() != static_cast<std::streamsize>(n))
            throw format_error(path_.string() + ": unexpected end of file");
    }

    std::filesystem::path path_;
    std::ifstream in_;
};

} // namespace chmap::detail

#endif
