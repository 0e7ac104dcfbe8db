// src/scores.cpp
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

#include "dmad/scores.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dmad {

const char* label_name(PairLabel l) {
  return l == PairLabel::genuine ? "genuine" : "attack";
}

PairLabel label_from_name(const std::string& s) {
  if (s == "genuine") return PairLabel::genuine;
  if (s == "attack") return PairLabel::attack;
  throw ValidationError("scores: unknown label '" + s + "'");
}

std::string format_score(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_scores_csv(const ScoreSet& s, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("write_scores_csv: cannot open " + path);
  f << "probe_id,reference_id,camera_id,label,feature_tag,score\n";
  for (const auto& e : s.entries) {
    if (!std::isfinite(e.score))
      throw NumericError("write_scores_csv: non-finite score for " +
                         e.probe_id);
    f << e.probe_id << ',' << e.reference_id << ',';
    if (e.camera_id == 0)
      f << "none";
    else
      f << e.camera_id;
    f << ',' << label_name(e.label) << ',' << e.feature_tag << ','
      << format_score(e.score) << '\n';
  }
  if (!f) throw IoError("write_scores_csv: write failed for " + path);
}

ScoreSet read_scores_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("read_scores_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line))
    throw IoError("read_scores_csv: empty file " + path);
  if (line != "probe_id,reference_id,camera_id,label,feature_tag,score")
    throw ValidationError("read_scores_csv: unexpected header in " + path);

  ScoreSet s;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field[6];
    for (int i = 0; i < 6; ++i)
      if (!std::getline(ss, field[i], i < 5 ? ',' : '\n'))
        throw ValidationError("read_scores_csv: short row at line " +
                              std::to_string(lineno) + " in " + path);
    ScoreEntry e;
    e.probe_id = field[0];
    e.reference_id = field[1];
    e.camera_id = field[2] == "none" ? 0 : std::stoi(field[2]);
    e.label = label_from_name(field[3]);
    e.feature_tag = field[4];
    try {
      std::size_t pos = 0;
      e.score = std::stod(field[5], &pos);
      if (pos != field[5].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ValidationError("read_scores_csv: bad score at line " +
                            std::to_string(lineno) + " in " + path);
    }
    if (!std::isfinite(e.score))
      throw ValidationError("read_scores_csv: non-finite score at line " +
                            std::to_string(lineno) + " in " + path);
    s.entries.push_back(std::move(e));
  }
  return s;
}

}  // namespace dmad
