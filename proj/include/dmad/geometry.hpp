// include/dmad/geometry.hpp
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

#ifndef DMAD_GEOMETRY_HPP_
#define DMAD_GEOMETRY_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "dmad/raster.hpp"

namespace dmad {

/// 68 landmark points (x, y) in pixel coordinates, row i = point i+1 of the
/// standard 68-point face annotation scheme.
using LandmarkSet = Eigen::Matrix<double, 68, 2>;

constexpr int kNumLandmarks = 68;
// 0-based index ranges of the eye rings (1-based points 37-42 and 43-48)
constexpr int kLeftEyeBegin = 36, kLeftEyeEnd = 42;
constexpr int kRightEyeBegin = 42, kRightEyeEnd = 48;

/// Canonical face frame: a 256x256 crop with the eye centers pinned so the
/// eye line is horizontal.
struct CanonicalFrame {
  int size = 256;
  Eigen::Vector2d left_eye{88.0, 120.0};
  Eigen::Vector2d right_eye{168.0, 120.0};
};

/// p -> scale * R(rotation) * p + translation, rotation in (-pi, pi].
struct SimilarityTransform {
  double scale = 1.0;
  double rotation = 0.0;
  Eigen::Vector2d translation{0.0, 0.0};

  Eigen::Vector2d apply(const Eigen::Vector2d& p) const {
    const double c = std::cos(rotation), s = std::sin(rotation);
    return {scale * (c * p.x() - s * p.y()) + translation.x(),
            scale * (s * p.x() + c * p.y()) + translation.y()};
  }

  SimilarityTransform inverse() const {
    SimilarityTransform inv;
    inv.scale = 1.0 / scale;
    inv.rotation = -rotation;
    const double c = std::cos(inv.rotation), s = std::sin(inv.rotation);
    inv.translation = {-inv.scale * (c * translation.x() - s * translation.y()),
                       -inv.scale * (s * translation.x() + c * translation.y())};
    return inv;
  }
};

/// Eye centers as the means of the six-point eye rings.
std::pair<Eigen::Vector2d, Eigen::Vector2d> eye_centers(const LandmarkSet& lm);

/// Exact 2-point similarity mapping the eye centers onto the canonical
/// anchors; throws ValidationError when the inter-eye distance is < 2 px.
SimilarityTransform align_transform(const LandmarkSet& lm,
                                    const CanonicalFrame& canon = {});

LandmarkSet warp_landmarks(const LandmarkSet& lm,
                           const SimilarityTransform& t);

/// All 68 points finite and inside the image bounds with a 10% margin.
void validate_landmarks(const LandmarkSet& lm, int width, int height);

// Landmark file format: 68 lines of "x y" decimal pairs.
LandmarkSet load_landmarks(const std::string& path);
void save_landmarks(const LandmarkSet& lm, const std::string& path);

/// Bilinear warp of `img` through `t` into an out_w x out_h frame. Output
/// pixels whose source sample falls outside the image or touches an invalid
/// pixel get mask = false. Bilinear weights never overshoot the input range.
template <typename S>
Raster<S> warp(const Raster<S>& img, const SimilarityTransform& t, int out_w,
               int out_h) {
  Raster<S> out(out_w, out_h, img.channels(), S(0), false);
  const SimilarityTransform inv = t.inverse();
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x) {
      const Eigen::Vector2d sp = inv.apply({static_cast<double>(x),
                                            static_cast<double>(y)});
      const int x0 = static_cast<int>(std::floor(sp.x()));
      const int y0 = static_cast<int>(std::floor(sp.y()));
      if (x0 < 0 || y0 < 0 || x0 + 1 >= img.width() || y0 + 1 >= img.height())
        continue;
      if (!img.valid(x0, y0) || !img.valid(x0 + 1, y0) ||
          !img.valid(x0, y0 + 1) || !img.valid(x0 + 1, y0 + 1))
        continue;
      const double fx = sp.x() - x0, fy = sp.y() - y0;
      const double w00 = (1 - fx) * (1 - fy), w10 = fx * (1 - fy);
      const double w01 = (1 - fx) * fy, w11 = fx * fy;
      for (int c = 0; c < img.channels(); ++c) {
        const double v = w00 * img.at(x0, y0, c) + w10 * img.at(x0 + 1, y0, c) +
                         w01 * img.at(x0, y0 + 1, c) +
                         w11 * img.at(x0 + 1, y0 + 1, c);
        out.at(x, y, c) = static_cast<S>(v);
      }
      out.set_valid(x, y, true);
    }
  return out;
}

/// Warp for normal maps: resamples like warp(), then rotates the in-plane
/// components by the transform rotation (a similarity acting on a surface
/// rotates its normal field in-plane; scale leaves true normals unchanged),
/// renormalizes to unit length, and clamps n_z >= 0. Degenerate vectors are
/// invalidated.
template <typename S>
Raster<S> warp_normal_map(const Raster<S>& normals,
                          const SimilarityTransform& t, int out_w, int out_h) {
  if (normals.channels() != 3)
    throw ValidationError("warp_normal_map: need 3 channels");
  Raster<S> out = warp(normals, t, out_w, out_h);
  const double c = std::cos(t.rotation), s = std::sin(t.rotation);
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x) {
      if (!out.valid(x, y)) continue;
      Eigen::Vector3d n = out.vec3(x, y).template cast<double>();
      n = {c * n.x() - s * n.y(), s * n.x() + c * n.y(), n.z()};
      if (n.z() < 0.0) n.z() = 0.0;
      const double len = n.norm();
      if (len < 1e-6) {
        out.set_valid(x, y, false);
        out.set_vec3(x, y, Eigen::Matrix<S, 3, 1>::Zero());
        continue;
      }
      out.set_vec3(x, y, (n / len).template cast<S>());
    }
  return out;
}

}  // namespace dmad

#endif  // DMAD_GEOMETRY_HPP_
