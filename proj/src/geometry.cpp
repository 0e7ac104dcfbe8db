// src/geometry.cpp
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

#include "dmad/geometry.hpp"

#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dmad {

std::pair<Eigen::Vector2d, Eigen::Vector2d> eye_centers(const LandmarkSet& lm) {
  if (!lm.allFinite())
    throw ValidationError("eye_centers: non-finite landmark");
  Eigen::Vector2d left = Eigen::Vector2d::Zero();
  Eigen::Vector2d right = Eigen::Vector2d::Zero();
  for (int i = kLeftEyeBegin; i < kLeftEyeEnd; ++i) left += lm.row(i);
  for (int i = kRightEyeBegin; i < kRightEyeEnd; ++i) right += lm.row(i);
  return {left / 6.0, right / 6.0};
}

SimilarityTransform align_transform(const LandmarkSet& lm,
                                    const CanonicalFrame& canon) {
  const auto [left, right] = eye_centers(lm);
  const std::complex<double> ps(left.x(), left.y());
  const std::complex<double> pd(right.x(), right.y());
  if (std::abs(pd - ps) < 2.0)
    throw ValidationError("align_transform: degenerate eyes (< 2 px apart)");

  const std::complex<double> qs(canon.left_eye.x(), canon.left_eye.y());
  const std::complex<double> qd(canon.right_eye.x(), canon.right_eye.y());
  const std::complex<double> a = (qd - qs) / (pd - ps);
  const std::complex<double> t = qs - a * ps;

  SimilarityTransform out;
  out.scale = std::abs(a);
  out.rotation = std::arg(a);  // (-pi, pi]
  out.translation = {t.real(), t.imag()};
  return out;
}

LandmarkSet warp_landmarks(const LandmarkSet& lm,
                           const SimilarityTransform& t) {
  LandmarkSet out;
  for (int i = 0; i < kNumLandmarks; ++i) {
    const Eigen::Vector2d p = t.apply(lm.row(i));
    out.row(i) = p;
  }
  return out;
}

void validate_landmarks(const LandmarkSet& lm, int width, int height) {
  if (!lm.allFinite())
    throw ValidationError("landmarks: non-finite coordinate");
  const double mx = 0.1 * width, my = 0.1 * height;
  for (int i = 0; i < kNumLandmarks; ++i) {
    if (lm(i, 0) < -mx || lm(i, 0) > width - 1 + mx || lm(i, 1) < -my ||
        lm(i, 1) > height - 1 + my)
      throw ValidationError("landmarks: point " + std::to_string(i + 1) +
                            " outside image bounds + 10% margin");
  }
}

LandmarkSet load_landmarks(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("load_landmarks: cannot open " + path);
  LandmarkSet lm;
  std::string line;
  int i = 0;
  while (std::getline(f, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (i >= kNumLandmarks)
      throw ValidationError("load_landmarks: more than 68 points in " + path);
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y))
      throw ValidationError("load_landmarks: malformed line in " + path);
    lm(i, 0) = x;
    lm(i, 1) = y;
    ++i;
  }
  if (i != kNumLandmarks)
    throw ValidationError("load_landmarks: expected 68 points, got " +
                          std::to_string(i) + " in " + path);
  return lm;
}

void save_landmarks(const LandmarkSet& lm, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("save_landmarks: cannot open " + path);
  char buf[80];
  for (int i = 0; i < kNumLandmarks; ++i) {
    std::snprintf(buf, sizeof(buf), "%.10g %.10g\n", lm(i, 0), lm(i, 1));
    f << buf;
  }
  if (!f) throw IoError("save_landmarks: write failed for " + path);
}

}  // namespace dmad
