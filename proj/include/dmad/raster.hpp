// include/dmad/raster.hpp
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

#ifndef DMAD_RASTER_HPP_
#define DMAD_RASTER_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dmad/common.hpp"

namespace dmad {

/// Dense H x W x C raster with a per-pixel validity mask. Values are stored
/// row-major, channel-interleaved: index(x, y, c) = (y * W + x) * C + c.
/// Immutable-after-construction use is assumed by concurrent readers.
template <typename Scalar>
class Raster {
 public:
  using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Raster() = default;
  Raster(int width, int height, int channels, Scalar fill = Scalar(0),
         bool valid = true)
      : width_(width),
        height_(height),
        channels_(channels),
        data_(static_cast<std::size_t>(width) * height * channels, fill),
        mask_(static_cast<std::size_t>(width) * height, valid ? 1 : 0) {
    if (width <= 0 || height <= 0 || channels <= 0)
      throw ValidationError("raster dimensions must be positive");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::int64_t pixel_count() const {
    return static_cast<std::int64_t>(width_) * height_;
  }
  std::int64_t value_count() const { return pixel_count() * channels_; }
  bool empty() const { return data_.empty(); }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  Scalar& at(int x, int y, int c = 0) {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  Scalar at(int x, int y, int c = 0) const {
    return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  bool valid(int x, int y) const {
    return mask_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set_valid(int x, int y, bool v) {
    mask_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }

  Eigen::Matrix<Scalar, 3, 1> vec3(int x, int y) const {
    return {at(x, y, 0), at(x, y, 1), at(x, y, 2)};
  }
  void set_vec3(int x, int y, const Eigen::Matrix<Scalar, 3, 1>& v) {
    at(x, y, 0) = v[0];
    at(x, y, 1) = v[1];
    at(x, y, 2) = v[2];
  }

  Eigen::Map<ArrayX> values() {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }
  Eigen::Map<const ArrayX> values() const {
    return {data_.data(), static_cast<Eigen::Index>(data_.size())};
  }

  std::vector<Scalar>& data() { return data_; }
  const std::vector<Scalar>& data() const { return data_; }
  std::vector<std::uint8_t>& mask() { return mask_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  std::int64_t valid_count() const {
    std::int64_t n = 0;
    for (auto m : mask_) n += m != 0;
    return n;
  }

  bool same_shape(const Raster& o) const {
    return width_ == o.width_ && height_ == o.height_ &&
           channels_ == o.channels_;
  }

  template <typename Other>
  Raster<Other> cast() const {
    Raster<Other> out(width_, height_, channels_);
    for (std::size_t i = 0; i < data_.size(); ++i)
      out.data()[i] = static_cast<Other>(data_[i]);
    out.mask() = mask_;
    return out;
  }

  bool operator==(const Raster& o) const {
    return width_ == o.width_ && height_ == o.height_ &&
           channels_ == o.channels_ && data_ == o.data_ && mask_ == o.mask_;
  }

 private:
  int width_ = 0, height_ = 0, channels_ = 0;
  std::vector<Scalar> data_;
  std::vector<std::uint8_t> mask_;
};

using FloatMap = Raster<float>;

/// True when every value under a valid pixel is finite.
template <typename Scalar>
bool finite_where_valid(const Raster<Scalar>& r) {
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) {
      if (!r.valid(x, y)) continue;
      for (int c = 0; c < r.channels(); ++c)
        if (!std::isfinite(static_cast<double>(r.at(x, y, c)))) return false;
    }
  return true;
}

/// Checks the unit-length and camera-facing invariants of a normal map:
/// | ||n|| - 1 | <= tol and n_z >= 0 at every valid pixel.
template <typename Scalar>
void validate_normal_map(const Raster<Scalar>& n, double tol = 1e-4) {
  if (n.channels() != 3)
    throw ValidationError("normal map must have 3 channels");
  for (int y = 0; y < n.height(); ++y)
    for (int x = 0; x < n.width(); ++x) {
      if (!n.valid(x, y)) continue;
      const auto v = n.vec3(x, y).template cast<double>();
      if (std::abs(v.norm() - 1.0) > tol)
        throw ValidationError("normal map contains a non-unit vector");
      if (v[2] < 0.0)
        throw ValidationError("normal map contains n_z < 0");
    }
}

/// Mask intersection of two equally sized rasters, returned as a pixel mask.
template <typename A, typename B>
std::vector<std::uint8_t> mask_intersection(const Raster<A>& a,
                                            const Raster<B>& b) {
  if (a.width() != b.width() || a.height() != b.height())
    throw ValidationError("raster dimension mismatch");
  std::vector<std::uint8_t> m(a.mask().size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = (a.mask()[i] && b.mask()[i]) ? 1 : 0;
  return m;
}

/// Rec.601 luminance of a 1- or 3-channel raster.
template <typename Scalar>
Raster<Scalar> luminance(const Raster<Scalar>& img) {
  if (img.channels() == 1) return img;
  if (img.channels() != 3)
    throw ValidationError("luminance expects 1 or 3 channels");
  Raster<Scalar> out(img.width(), img.height(), 1);
  out.mask() = img.mask();
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      out.at(x, y) = static_cast<Scalar>(0.299 * img.at(x, y, 0) +
                                         0.587 * img.at(x, y, 1) +
                                         0.114 * img.at(x, y, 2));
  return out;
}

}  // namespace dmad

#endif  // DMAD_RASTER_HPP_
