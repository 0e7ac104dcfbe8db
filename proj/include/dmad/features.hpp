// include/dmad/features.hpp
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

#ifndef DMAD_FEATURES_HPP_
#define DMAD_FEATURES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "dmad/raster.hpp"

namespace dmad {

/// Per-pixel 3 x 7-bit normal codes (21 bits per pixel).
using QuantizedNormalMap = Raster<std::uint8_t>;

/// Uniform mid-rise quantizer over [-1, 1]: code = round((c + 1)/2 * 127),
/// ties rounding half away from zero, clamped to [0, 127].
template <typename S>
QuantizedNormalMap quantize_normals(const Raster<S>& normals) {
  if (normals.channels() != 3)
    throw ValidationError("quantize_normals: need 3 channels");
  QuantizedNormalMap q(normals.width(), normals.height(), 3);
  q.mask() = normals.mask();
  for (int y = 0; y < normals.height(); ++y)
    for (int x = 0; x < normals.width(); ++x)
      for (int c = 0; c < 3; ++c) {
        const double v = (static_cast<double>(normals.at(x, y, c)) + 1.0) *
                         0.5 * 127.0;
        const double r = std::round(v);  // half away from zero
        q.at(x, y, c) = static_cast<std::uint8_t>(
            std::min(127.0, std::max(0.0, r)));
      }
  return q;
}

/// Inverse of the quantizer grid: code k -> 2k/127 - 1 (not renormalized).
template <typename S = float>
Raster<S> dequantize_normals(const QuantizedNormalMap& q) {
  Raster<S> out(q.width(), q.height(), 3);
  out.mask() = q.mask();
  for (int y = 0; y < q.height(); ++y)
    for (int x = 0; x < q.width(); ++x)
      for (int c = 0; c < 3; ++c)
        out.at(x, y, c) =
            static_cast<S>(2.0 * q.at(x, y, c) / 127.0 - 1.0);
  return out;
}

enum class PairFeatureKind { reconstruction, normal };

/// Element-wise absolute difference of a feature pair plus its mean (the L1
/// loss used for diagnostics; classifiers consume the vector).
struct PairFeature {
  PairFeatureKind kind = PairFeatureKind::reconstruction;
  Eigen::VectorXd diff;
  double scalar_l1 = 0.0;
};

/// |q1 - q2| per component over the intersected mask, flattened row-major
/// and scaled by 1/127; scalar_l1 is the mean.
PairFeature normal_pair_feature(const QuantizedNormalMap& q1,
                                const QuantizedNormalMap& q2);

/// Block-mean downsample of |q1 - q2|/127 onto a grid x grid x 3 layout;
/// the fixed-size normal-difference vector fed to the SVM. Cells with no
/// valid pixel contribute 0.
Eigen::VectorXd normal_diff_grid(const QuantizedNormalMap& q1,
                                 const QuantizedNormalMap& q2, int grid = 32);

struct Embedding {
  int dim = 0;
  Eigen::VectorXd values;
  std::string extractor_tag;
};

/// Extractor selector: "builtin" or "external:<path>"; for external
/// extraction `path` names the per-image embedding file at embed() time.
struct ExtractorSpec {
  enum class Kind { builtin, external };
  Kind kind = Kind::builtin;
  std::string path;
  int external_dim = 4096;

  static ExtractorSpec parse(const std::string& s, int external_dim = 4096);
  const char* tag() const {
    return kind == Kind::builtin ? "builtin" : "external";
  }
};

/// builtin: 16x16 block means (256 values) plus an 8-bin gradient-orientation
/// histogram over a 16x16 cell grid (2048 values) on the 256x256 luminance,
/// L2-normalized. external: file pass-through, count checked against the
/// declared dimension.
Embedding embed(const Raster<double>& img, const ExtractorSpec& extractor);

/// diff = |e1 - e2| element-wise; scalar_l1 = mean(diff). Dimensions and
/// extractor tags must match.
PairFeature reconstruction_pair_feature(const Embedding& e1,
                                        const Embedding& e2);

// Embedding file format: one decimal value per line.
Embedding load_embedding_file(const std::string& path, int expected_dim,
                              const std::string& tag);
void save_embedding_file(const Embedding& e, const std::string& path);

}  // namespace dmad

#endif  // DMAD_FEATURES_HPP_
