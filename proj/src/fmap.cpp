// src/fmap.cpp
//
// Copyright 2026  The dmad authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dmad/fmap.hpp"

#include <cstring>
#include <fstream>

namespace dmad {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_fmap(const FloatMap& map, const std::string& path) {
  if (map.empty()) throw ValidationError("write_fmap: empty map");
  if (map.channels() != 1 && map.channels() != 3)
    throw ValidationError("write_fmap: channels must be 1 or 3");
  if (!finite_where_valid(map))
    throw ValidationError("write_fmap: non-finite value at a valid pixel");

  std::string buf;
  buf.reserve(16 + map.data().size() * 4 + map.mask().size() / 8 + 1);
  buf += "FMAP";
  put_u32(buf, static_cast<std::uint32_t>(map.width()));
  put_u32(buf, static_cast<std::uint32_t>(map.height()));
  put_u32(buf, static_cast<std::uint32_t>(map.channels()));

  static_assert(sizeof(float) == 4);
  for (float v : map.data()) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(buf, bits);
  }

  const std::size_t npix = map.mask().size();
  std::string bits((npix + 7) / 8, '\0');
  for (std::size_t p = 0; p < npix; ++p)
    if (map.mask()[p]) bits[p >> 3] |= static_cast<char>(1u << (p & 7));
  buf += bits;

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("write_fmap: cannot open " + path);
  f.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!f) throw IoError("write_fmap: write failed for " + path);
}

FloatMap read_fmap(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("read_fmap: cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(f)),
                  std::istreambuf_iterator<char>());

  if (buf.size() < 16) throw IoError("read_fmap: truncated header in " + path);
  if (std::memcmp(buf.data(), "FMAP", 4) != 0)
    throw IoError("read_fmap: bad magic in " + path);

  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  const std::uint32_t w = get_u32(p + 4);
  const std::uint32_t h = get_u32(p + 8);
  const std::uint32_t c = get_u32(p + 12);
  if (w == 0 || h == 0 || (c != 1 && c != 3))
    throw IoError("read_fmap: bad dimensions in " + path);
  const std::uint64_t nval = static_cast<std::uint64_t>(w) * h * c;
  const std::uint64_t npix = static_cast<std::uint64_t>(w) * h;
  if (nval > (1ull << 31))
    throw IoError("read_fmap: implausibly large raster in " + path);
  const std::uint64_t expected = 16 + nval * 4 + (npix + 7) / 8;
  if (buf.size() < expected)
    throw IoError("read_fmap: truncated payload in " + path);

  FloatMap map(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c));
  for (std::uint64_t i = 0; i < nval; ++i) {
    std::uint32_t bits = get_u32(p + 16 + i * 4);
    float v;
    std::memcpy(&v, &bits, 4);
    map.data()[i] = v;
  }
  const unsigned char* mb = p + 16 + nval * 4;
  for (std::uint64_t i = 0; i < npix; ++i)
    map.mask()[i] = (mb[i >> 3] >> (i & 7)) & 1u;
  return map;
}

}  // namespace dmad
