// include/dmad/image_io.hpp
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

#ifndef DMAD_IMAGE_IO_HPP_
#define DMAD_IMAGE_IO_HPP_

#include <string>

#include "dmad/raster.hpp"

namespace dmad {

/// Decodes an 8-bit grayscale or RGB PNG into [0,1] floats (value / 255),
/// full-true mask. Any other PNG flavor (16-bit, palette, alpha) is an
/// unsupported-format error.
FloatMap load_image(const std::string& path);

/// Encodes a 1- or 3-channel raster as an 8-bit PNG, round(v * 255) with
/// values clamped to [0,1] first. The mask is ignored.
void save_image(const FloatMap& img, const std::string& path);

}  // namespace dmad

#endif  // DMAD_IMAGE_IO_HPP_
