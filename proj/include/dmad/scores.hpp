// include/dmad/scores.hpp
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

#ifndef DMAD_SCORES_HPP_
#define DMAD_SCORES_HPP_

#include <string>
#include <vector>

#include "dmad/common.hpp"

namespace dmad {

enum class PairLabel { genuine, attack };

/// One comparison score. Convention everywhere in this codebase: larger
/// score means more morph-like (attack).
struct ScoreEntry {
  std::string probe_id;
  std::string reference_id;
  int camera_id = 0;  // 0 = none (e.g. cross-camera fused scores)
  PairLabel label = PairLabel::genuine;
  std::string feature_tag;
  double score = 0.0;

  bool operator==(const ScoreEntry&) const = default;
};

struct ScoreSet {
  std::vector<ScoreEntry> entries;

  std::vector<double> scores_of(PairLabel label) const {
    std::vector<double> out;
    for (const auto& e : entries)
      if (e.label == label) out.push_back(e.score);
    return out;
  }
};

const char* label_name(PairLabel l);
PairLabel label_from_name(const std::string& s);

// CSV with header: probe_id,reference_id,camera_id,label,feature_tag,score
void write_scores_csv(const ScoreSet& s, const std::string& path);
ScoreSet read_scores_csv(const std::string& path);

/// Deterministic decimal rendering used for every score written to disk.
std::string format_score(double v);

}  // namespace dmad

#endif  // DMAD_SCORES_HPP_
