// src/manifest.cpp
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

#include "dmad/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dmad {

const char* role_name(Role r) {
  switch (r) {
    case Role::bonafide_passport: return "bonafide_passport";
    case Role::morph_passport: return "morph_passport";
    case Role::gate: return "gate";
  }
  return "?";
}

Role role_from_name(const std::string& s) {
  if (s == "bonafide_passport") return Role::bonafide_passport;
  if (s == "morph_passport") return Role::morph_passport;
  if (s == "gate") return Role::gate;
  throw ValidationError("manifest: unknown role '" + s + "'");
}

const char* split_name(Split s) {
  return s == Split::train ? "train" : "test";
}

Split split_from_name(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "test") return Split::test;
  throw ValidationError("manifest: unknown split '" + s + "'");
}

namespace {

ManifestRecord parse_record(const std::string& line, int lineno) {
  std::istringstream ss(line);
  std::map<std::string, std::string> kv;
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("manifest line " + std::to_string(lineno) +
                            ": malformed token '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    if (kv.count(key))
      throw ValidationError("manifest line " + std::to_string(lineno) +
                            ": duplicate key '" + key + "'");
    kv[key] = tok.substr(eq + 1);
  }

  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::string();
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](const char* key) {
    auto v = take(key);
    if (v.empty())
      throw ValidationError("manifest line " + std::to_string(lineno) +
                            ": missing required key '" + key + "'");
    return v;
  };

  ManifestRecord r;
  r.subject_id = require("subject");
  r.role = role_from_name(require("role"));
  r.split = split_from_name(require("split"));
  r.image_path = require("image");
  r.landmarks_path = require("landmarks");

  const std::string cam = take("camera");
  if (cam.empty() || cam == "none") {
    r.camera_id = kNoCamera;
  } else {
    try {
      r.camera_id = std::stoi(cam);
    } catch (const std::exception&) {
      r.camera_id = -1;
    }
    if (r.camera_id < 1 || r.camera_id > kNumCameras)
      throw ValidationError("manifest line " + std::to_string(lineno) +
                            ": camera must be 1..4 or none");
  }

  r.normals_path = take("normals");
  r.albedo_path = take("albedo");
  r.diffuse_path = take("diffuse");
  r.embedding_path = take("embedding");

  const std::string parents = take("parents");
  if (!parents.empty()) {
    auto colon = parents.find(':');
    if (colon == std::string::npos || colon == 0 ||
        colon + 1 == parents.size())
      throw ValidationError("manifest line " + std::to_string(lineno) +
                            ": parents must be 'idA:idB'");
    r.morph_parents = {parents.substr(0, colon), parents.substr(colon + 1)};
  }

  if (!kv.empty())
    throw ValidationError("manifest line " + std::to_string(lineno) +
                          ": unknown key '" + kv.begin()->first + "'");
  return r;
}

}  // namespace

DatasetManifest parse_manifest(const std::string& text) {
  DatasetManifest m;
  std::istringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    m.records.push_back(parse_record(line, lineno));
  }
  return m;
}

std::string serialize_manifest(const DatasetManifest& m) {
  std::ostringstream out;
  for (const auto& r : m.records) {
    out << "subject=" << r.subject_id << " role=" << role_name(r.role);
    if (r.camera_id != kNoCamera) out << " camera=" << r.camera_id;
    out << " split=" << split_name(r.split);
    out << " image=" << r.image_path << " landmarks=" << r.landmarks_path;
    if (!r.normals_path.empty()) out << " normals=" << r.normals_path;
    if (!r.albedo_path.empty()) out << " albedo=" << r.albedo_path;
    if (!r.diffuse_path.empty()) out << " diffuse=" << r.diffuse_path;
    if (!r.embedding_path.empty()) out << " embedding=" << r.embedding_path;
    if (!r.morph_parents.first.empty())
      out << " parents=" << r.morph_parents.first << ':'
          << r.morph_parents.second;
    out << '\n';
  }
  return out.str();
}

void validate_manifest(const DatasetManifest& m) {
  std::set<std::string> train_paths, test_paths;
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    const auto& r = m.records[i];
    const std::string where = "manifest record " + std::to_string(i + 1);
    if (r.role == Role::gate) {
      if (r.camera_id < 1 || r.camera_id > kNumCameras)
        throw ValidationError(where + ": gate record must carry a camera id");
    } else {
      if (r.camera_id != kNoCamera)
        throw ValidationError(where + ": passport record must have no camera");
    }
    if (r.role == Role::morph_passport) {
      if (r.morph_parents.first.empty() || r.morph_parents.second.empty())
        throw ValidationError(where + ": morph record needs two parents");
      if (r.morph_parents.first == r.morph_parents.second)
        throw ValidationError(where + ": morph parents must be distinct");
    } else if (!r.morph_parents.first.empty()) {
      throw ValidationError(where + ": only morph records carry parents");
    }
    (r.split == Split::train ? train_paths : test_paths).insert(r.image_path);
  }
  for (const auto& p : train_paths)
    if (test_paths.count(p))
      throw ValidationError("manifest: image path '" + p +
                            "' appears in both train and test splits");
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("load_manifest: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  DatasetManifest m = parse_manifest(text);
  m.base_dir = std::filesystem::path(path).parent_path().string();
  validate_manifest(m);
  return m;
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("save_manifest: cannot open " + path);
  f << serialize_manifest(m);
  if (!f) throw IoError("save_manifest: write failed for " + path);
}

std::string resolve_path(const std::string& base_dir, const std::string& rel) {
  if (rel.empty()) return rel;
  std::filesystem::path p(rel);
  if (p.is_absolute() || base_dir.empty()) return rel;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace dmad
