// src/shading.cpp
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

#include "dmad/shading.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmad/fmap.hpp"

namespace dmad {

const char* decompose_source_name(DecomposeSource s) {
  switch (s) {
    case DecomposeSource::oracle_files: return "oracle";
    case DecomposeSource::synthetic_ground_truth: return "synthetic";
    case DecomposeSource::template_fit: return "template";
  }
  return "?";
}

DecomposeSource decompose_source_from_name(const std::string& s) {
  if (s == "oracle") return DecomposeSource::oracle_files;
  if (s == "synthetic") return DecomposeSource::synthetic_ground_truth;
  if (s == "template") return DecomposeSource::template_fit;
  throw ValidationError("unknown decomposer mode '" + s + "'");
}

namespace {

Raster<double> load_map(const std::string& base_dir, const std::string& rel,
                        const char* what) {
  if (rel.empty())
    throw ValidationError(std::string("decompose: record has no ") + what +
                          " path");
  const std::string path = resolve_path(base_dir, rel);
  if (!std::filesystem::exists(path))
    throw IoError(std::string("decompose: missing ") + what + " file " + path);
  return read_fmap(path).cast<double>();
}

void apply_shared_mask(Decomposition& d, const Raster<double>& img) {
  auto& m = d.normals.mask();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const bool v = m[i] && d.albedo.mask()[i] && img.mask()[i] &&
                   (d.diffuse.empty() || d.diffuse.mask()[i]);
    m[i] = v ? 1 : 0;
  }
  d.albedo.mask() = m;
  if (!d.diffuse.empty()) d.diffuse.mask() = m;
}

Decomposition decompose_from_maps(const Raster<double>& img,
                                  const ManifestRecord& rec,
                                  DecomposeSource mode,
                                  const DecomposeOptions& opts) {
  Decomposition d;
  d.source = mode;
  d.normals = load_map(opts.base_dir, rec.normals_path, "normals");
  d.albedo = load_map(opts.base_dir, rec.albedo_path, "albedo");
  const bool ingest_diffuse =
      mode == DecomposeSource::oracle_files && !rec.diffuse_path.empty();
  if (ingest_diffuse)
    d.diffuse = load_map(opts.base_dir, rec.diffuse_path, "diffuse");

  if (opts.align != nullptr) {
    d.normals = warp_normal_map(d.normals, *opts.align, img.width(),
                                img.height());
    d.albedo = warp(d.albedo, *opts.align, img.width(), img.height());
    if (ingest_diffuse)
      d.diffuse = warp(d.diffuse, *opts.align, img.width(), img.height());
  }
  if (d.normals.width() != img.width() || d.normals.height() != img.height() ||
      !d.normals.same_shape(d.normals) ||
      d.albedo.width() != img.width() || d.albedo.height() != img.height())
    throw ValidationError("decompose: map dimensions do not match the image");

  apply_shared_mask(d, img);
  d.fit_info = fit_lighting(img, d.normals, d.albedo);
  d.lighting = d.fit_info.lighting;

  if (!ingest_diffuse) {
    d.diffuse = render_diffuse(d.normals, d.albedo, d.lighting).image;
    d.diffuse.mask() = d.normals.mask();
  }
  return d;
}

Decomposition decompose_template_fit(const Raster<double>& img,
                                     const DecomposeOptions& opts) {
  if (opts.template_path.empty() ||
      !std::filesystem::exists(opts.template_path))
    throw IoError("decompose: face-normal template not found at '" +
                  opts.template_path + "'");
  Raster<double> tmpl = read_fmap(opts.template_path).cast<double>();
  if (tmpl.width() != img.width() || tmpl.height() != img.height())
    throw ValidationError(
        "decompose: template size does not match the aligned image");

  Decomposition d;
  d.source = DecomposeSource::template_fit;
  d.normals = std::move(tmpl);
  d.albedo = Raster<double>(img.width(), img.height(), img.channels(), 1.0);
  d.albedo.mask() = d.normals.mask();
  apply_shared_mask(d, img);

  // two rounds of (lighting fit, albedo = image / shading)
  const Raster<double> ones(img.width(), img.height(), 1, 1.0);
  for (int round = 0; round < 2; ++round) {
    d.fit_info = fit_lighting(img, d.normals, d.albedo);
    d.lighting = d.fit_info.lighting;
    Raster<double> shading = render_diffuse(d.normals, ones, d.lighting).image;
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) {
        if (!d.albedo.valid(x, y)) continue;
        for (int c = 0; c < img.channels(); ++c)
          d.albedo.at(x, y, c) =
              img.at(x, y, c) / std::max(shading.at(x, y, c), 1e-3);
      }
  }
  d.diffuse = render_diffuse(d.normals, d.albedo, d.lighting).image;
  d.diffuse.mask() = d.normals.mask();
  return d;
}

}  // namespace

Decomposition decompose(const Raster<double>& img, const ManifestRecord& rec,
                        DecomposeSource mode, const DecomposeOptions& opts) {
  switch (mode) {
    case DecomposeSource::oracle_files:
    case DecomposeSource::synthetic_ground_truth:
      return decompose_from_maps(img, rec, mode, opts);
    case DecomposeSource::template_fit:
      return decompose_template_fit(img, opts);
  }
  throw ValidationError("decompose: unknown mode");
}

Raster<double> diffuse_reconstruct(const Decomposition& d) {
  if (d.source == DecomposeSource::oracle_files) return d.diffuse;
  return render_diffuse(d.normals, d.albedo, d.lighting).image;
}

void save_lighting(const SHLighting& l, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("save_lighting: cannot open " + path);
  char buf[40];
  for (int c = 0; c < l.channels(); ++c)
    for (int i = 0; i < 9; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g\n", l.coeffs(i, c));
      f << buf;
    }
  if (!f) throw IoError("save_lighting: write failed for " + path);
}

SHLighting load_lighting(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("load_lighting: cannot open " + path);
  std::vector<double> vals;
  double v;
  while (f >> v) vals.push_back(v);
  if (vals.size() != 9 && vals.size() != 27)
    throw ValidationError("load_lighting: expected 9 or 27 values in " + path);
  SHLighting l(static_cast<int>(vals.size() / 9));
  for (int c = 0; c < l.channels(); ++c)
    for (int i = 0; i < 9; ++i) l.coeffs(i, c) = vals[c * 9 + i];
  if (!l.all_finite())
    throw ValidationError("load_lighting: non-finite coefficient in " + path);
  return l;
}

}  // namespace dmad
