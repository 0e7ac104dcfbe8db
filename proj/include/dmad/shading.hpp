// include/dmad/shading.hpp
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

#ifndef DMAD_SHADING_HPP_
#define DMAD_SHADING_HPP_

#include <Eigen/Dense>
#include <string>

#include "dmad/geometry.hpp"
#include "dmad/manifest.hpp"
#include "dmad/raster.hpp"

namespace dmad {

/// Second-order spherical-harmonic lighting: 9 coefficients per color
/// channel, ordered [l_00, l_1-1, l_10, l_11, l_2-2, l_2-1, l_20, l_21,
/// l_22]. The Lambertian attenuation factors are folded into the
/// coefficients; only the product with the basis is ever observed.
struct SHLighting {
  Eigen::Matrix<double, 9, Eigen::Dynamic> coeffs;  // 9 x channels

  SHLighting() : coeffs(9, 0) {}
  explicit SHLighting(int channels) : coeffs(9, channels) { coeffs.setZero(); }

  int channels() const { return static_cast<int>(coeffs.cols()); }
  bool all_finite() const { return coeffs.allFinite(); }
};

/// Real SH basis at a unit normal (Basri-Jacobs constants):
///   Y_00 = 1/(2 sqrt(pi))
///   Y_1m = sqrt(3/4pi) * {y, z, x}
///   Y_2m = 3 sqrt(5/12pi) * {xy, yz, xz},
///          (1/2) sqrt(5/4pi) * (3z^2 - 1), (3/2) sqrt(5/12pi) * (x^2 - y^2)
/// Throws NumericError unless | ||n|| - 1 | <= 1e-4.
template <typename S>
Eigen::Matrix<S, 9, 1> sh_basis(const Eigen::Matrix<S, 3, 1>& n) {
  const double x = static_cast<double>(n[0]);
  const double y = static_cast<double>(n[1]);
  const double z = static_cast<double>(n[2]);
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (std::abs(norm - 1.0) > 1e-4)
    throw NumericError("sh_basis: input is not a unit vector");

  constexpr double k00 = 0.28209479177387814;  // 1 / (2 sqrt(pi))
  constexpr double k1 = 0.48860251190291992;   // sqrt(3 / (4 pi))
  constexpr double k2 = 1.09254843059207907;   // 3 sqrt(5 / (12 pi))
  constexpr double k20 = 0.31539156525252005;  // (1/2) sqrt(5 / (4 pi))
  constexpr double k22 = 0.54627421529603954;  // (3/2) sqrt(5 / (12 pi))

  Eigen::Matrix<S, 9, 1> b;
  b[0] = static_cast<S>(k00);
  b[1] = static_cast<S>(k1 * y);
  b[2] = static_cast<S>(k1 * z);
  b[3] = static_cast<S>(k1 * x);
  b[4] = static_cast<S>(k2 * x * y);
  b[5] = static_cast<S>(k2 * y * z);
  b[6] = static_cast<S>(k20 * (3.0 * z * z - 1.0));
  b[7] = static_cast<S>(k2 * x * z);
  b[8] = static_cast<S>(k22 * (x * x - y * y));
  return b;
}

template <typename S>
struct RenderResult {
  Raster<S> image;
  std::int64_t clamped = 0;  // values clipped at zero radiance
};

/// I(p) = albedo * sum_i l_i b_i(n(p)) per valid pixel and channel, clamped
/// at 0 from below. Albedo may be single-channel (shared across channels) or
/// match the lighting channel count. Output mask is the intersection of the
/// normals and albedo masks.
template <typename S>
RenderResult<S> render_diffuse(const Raster<S>& normals,
                               const Raster<S>& albedo,
                               const SHLighting& light) {
  if (normals.channels() != 3)
    throw ValidationError("render_diffuse: normals must have 3 channels");
  if (albedo.width() != normals.width() ||
      albedo.height() != normals.height())
    throw ValidationError("render_diffuse: dimension mismatch");
  const int ch = light.channels();
  if (ch != 1 && ch != 3)
    throw ValidationError("render_diffuse: lighting must have 1 or 3 channels");
  if (albedo.channels() != 1 && albedo.channels() != ch)
    throw ValidationError("render_diffuse: albedo/lighting channel mismatch");

  RenderResult<S> res;
  res.image = Raster<S>(normals.width(), normals.height(), ch, S(0), false);
  for (int y = 0; y < normals.height(); ++y)
    for (int x = 0; x < normals.width(); ++x) {
      if (!normals.valid(x, y) || !albedo.valid(x, y)) continue;
      res.image.set_valid(x, y, true);
      const auto b = sh_basis<double>(normals.vec3(x, y).template cast<double>());
      for (int c = 0; c < ch; ++c) {
        const double rho = static_cast<double>(
            albedo.at(x, y, albedo.channels() == 1 ? 0 : c));
        double v = rho * light.coeffs.col(c).dot(b);
        if (v < 0.0) {
          v = 0.0;
          ++res.clamped;
        }
        res.image.at(x, y, c) = static_cast<S>(v);
      }
    }
  return res;
}

struct LightingFit {
  SHLighting lighting;
  Eigen::VectorXd residual_rms;  // per channel
  Eigen::VectorXi rank;          // design-matrix rank per channel
};

/// Per-channel minimum-norm least squares of image = albedo * (l . basis(n))
/// over pixels valid in all three rasters and with albedo > 1e-3. Normal
/// equations with diagonal damping 1e-9; accumulation runs in doubles in
/// row-major pixel order regardless of the raster scalar.
template <typename S>
LightingFit fit_lighting(const Raster<S>& image, const Raster<S>& normals,
                         const Raster<S>& albedo) {
  if (normals.channels() != 3)
    throw ValidationError("fit_lighting: normals must have 3 channels");
  if (!image.same_shape(image) || image.width() != normals.width() ||
      image.height() != normals.height() ||
      albedo.width() != normals.width() || albedo.height() != normals.height())
    throw ValidationError("fit_lighting: dimension mismatch");
  const int ch = image.channels();
  if (albedo.channels() != 1 && albedo.channels() != ch)
    throw ValidationError("fit_lighting: albedo/image channel mismatch");

  constexpr double kMinAlbedo = 1e-3;
  constexpr double kDamping = 1e-9;

  LightingFit fit;
  fit.lighting = SHLighting(ch);
  fit.residual_rms = Eigen::VectorXd::Zero(ch);
  fit.rank = Eigen::VectorXi::Zero(ch);

  using Mat9 = Eigen::Matrix<double, 9, 9>;
  using Vec9 = Eigen::Matrix<double, 9, 1>;
  std::vector<Mat9> gram(ch, Mat9::Zero());
  std::vector<Vec9> rhs(ch, Vec9::Zero());
  std::vector<std::int64_t> used(ch, 0);

  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      if (!image.valid(x, y) || !normals.valid(x, y) || !albedo.valid(x, y))
        continue;
      const auto b = sh_basis<double>(normals.vec3(x, y).template cast<double>());
      for (int c = 0; c < ch; ++c) {
        const double rho = static_cast<double>(
            albedo.at(x, y, albedo.channels() == 1 ? 0 : c));
        if (rho <= kMinAlbedo) continue;
        const Vec9 row = rho * b;
        gram[c].noalias() += row * row.transpose();
        rhs[c].noalias() += row * static_cast<double>(image.at(x, y, c));
        ++used[c];
      }
    }

  for (int c = 0; c < ch; ++c) {
    if (used[c] < 9)
      throw NumericError("fit_lighting: fewer than 9 usable pixels");
    Mat9 damped = gram[c];
    damped.diagonal().array() += kDamping;
    fit.lighting.coeffs.col(c) = damped.ldlt().solve(rhs[c]);

    Eigen::SelfAdjointEigenSolver<Mat9> eig(gram[c],
                                            Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    int rank = 0;
    if (lmax > 0.0)
      rank = static_cast<int>(
          (eig.eigenvalues().array() > lmax * 1e-10).count());
    fit.rank[c] = rank;
  }

  // residual pass, same pixel order
  std::vector<double> sq(ch, 0.0);
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x) {
      if (!image.valid(x, y) || !normals.valid(x, y) || !albedo.valid(x, y))
        continue;
      const auto b = sh_basis<double>(normals.vec3(x, y).template cast<double>());
      for (int c = 0; c < ch; ++c) {
        const double rho = static_cast<double>(
            albedo.at(x, y, albedo.channels() == 1 ? 0 : c));
        if (rho <= kMinAlbedo) continue;
        const double r = static_cast<double>(image.at(x, y, c)) -
                         rho * fit.lighting.coeffs.col(c).dot(b);
        sq[c] += r * r;
      }
    }
  for (int c = 0; c < ch; ++c)
    fit.residual_rms[c] = std::sqrt(sq[c] / static_cast<double>(used[c]));
  return fit;
}

enum class DecomposeSource { oracle_files, synthetic_ground_truth, template_fit };

const char* decompose_source_name(DecomposeSource s);
DecomposeSource decompose_source_from_name(const std::string& s);

/// The intrinsic decomposition of one image: diffuse reconstruction,
/// surface normals, albedo, and SH lighting. All rasters share dimensions
/// and masks.
struct Decomposition {
  Raster<double> diffuse;
  Raster<double> normals;
  Raster<double> albedo;
  SHLighting lighting;
  DecomposeSource source = DecomposeSource::synthetic_ground_truth;
  LightingFit fit_info;
};

/// render_diffuse over the decomposition's own components; oracle-file
/// decompositions return the ingested diffuse map unchanged.
Raster<double> diffuse_reconstruct(const Decomposition& d);

struct DecomposeOptions {
  std::string base_dir;       // resolves record-relative paths
  std::string template_path;  // canonical face-normal FMAP (template_fit)
  // When set, ingested maps are warped into the image frame with this
  // transform (vector components of normal maps rotate along).
  const SimilarityTransform* align = nullptr;
};

/// Decomposes an image using oracle/ground-truth map files named by the
/// record, or the canonical-template alternating fit. The returned
/// components live in the frame of `img` and carry the intersected mask.
Decomposition decompose(const Raster<double>& img, const ManifestRecord& rec,
                        DecomposeSource mode,
                        const DecomposeOptions& opts = {});

// Lighting text format: one coefficient per line, channel-major
// (9 values for grayscale, 27 for RGB).
void save_lighting(const SHLighting& l, const std::string& path);
SHLighting load_lighting(const std::string& path);

}  // namespace dmad

#endif  // DMAD_SHADING_HPP_
