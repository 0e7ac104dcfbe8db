// include/dmad/manifest.hpp
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

#ifndef DMAD_MANIFEST_HPP_
#define DMAD_MANIFEST_HPP_

#include <string>
#include <utility>
#include <vector>

#include "dmad/common.hpp"

namespace dmad {

enum class Role { bonafide_passport, morph_passport, gate };
enum class Split { train, test };

constexpr int kNoCamera = 0;
constexpr int kNumCameras = 4;

/// One dataset record. Paths are stored as written in the manifest and are
/// interpreted relative to the manifest's directory.
struct ManifestRecord {
  std::string subject_id;
  Role role = Role::bonafide_passport;
  int camera_id = kNoCamera;  // 1..4 for gate captures, 0 otherwise
  Split split = Split::train;
  std::string image_path;
  std::string landmarks_path;
  std::string normals_path;    // optional
  std::string albedo_path;     // optional
  std::string diffuse_path;    // optional (oracle decompositions only)
  std::string embedding_path;  // optional
  std::pair<std::string, std::string> morph_parents;  // morph records only

  bool is_passport() const { return role != Role::gate; }
  bool operator==(const ManifestRecord&) const = default;
};

struct DatasetManifest {
  std::vector<ManifestRecord> records;
  std::string base_dir;  // directory containing the manifest file

  bool operator==(const DatasetManifest& o) const {
    return records == o.records;
  }
};

const char* role_name(Role r);
Role role_from_name(const std::string& s);
const char* split_name(Split s);
Split split_from_name(const std::string& s);

// Manifest text format: one record per line, whitespace-separated key=value
// pairs. '#' starts a comment line; blank lines are skipped. Keys: subject,
// role, camera, split, image, landmarks, normals, albedo, diffuse, embedding,
// parents (value "A:B"). Paths must not contain whitespace.
DatasetManifest parse_manifest(const std::string& text);
std::string serialize_manifest(const DatasetManifest& m);

/// Parses and validates; throws ValidationError on invariant violations
/// (split leakage, missing/duplicate morph parents, camera/role mismatch).
DatasetManifest load_manifest(const std::string& path);
void save_manifest(const DatasetManifest& m, const std::string& path);
void validate_manifest(const DatasetManifest& m);

/// Joins a manifest-relative path with the manifest's directory.
std::string resolve_path(const std::string& base_dir, const std::string& rel);

}  // namespace dmad

#endif  // DMAD_MANIFEST_HPP_
