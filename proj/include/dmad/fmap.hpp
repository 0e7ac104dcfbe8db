// include/dmad/fmap.hpp
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

#ifndef DMAD_FMAP_HPP_
#define DMAD_FMAP_HPP_

#include <string>

#include "dmad/raster.hpp"

namespace dmad {

// FMAP raster interchange format (bit-exact):
//   bytes 0..3              magic "FMAP"
//   u32 LE                  width
//   u32 LE                  height
//   u32 LE                  channels (1 or 3)
//   f32 LE * W*H*C          values, row-major, channel-interleaved
//   ceil(W*H / 8) bytes     validity bitmask; pixel p = y*W + x is bit
//                           (p & 7) of byte (p >> 3), LSB first

FloatMap read_fmap(const std::string& path);
void write_fmap(const FloatMap& map, const std::string& path);

}  // namespace dmad

#endif  // DMAD_FMAP_HPP_
