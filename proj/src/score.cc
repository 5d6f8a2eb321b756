// salign/score.cc

// Copyright 2026  The salign authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "salign/score.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace salign {

namespace {

using nlohmann::json;

// Line number (1-based) of a byte offset, for parse error messages.
int line_of_offset(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string NoteKey::str() const {
  std::ostringstream os;
  os << "(" << pitch << ", " << instrument << ")";
  return os.str();
}

std::vector<Note> parse_score(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("score: JSON parse error at line " +
                                std::to_string(line_of_offset(document, e.byte)) +
                                ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("notes") || !doc["notes"].is_array())
    throw std::invalid_argument("score: expected top-level object with a \"notes\" array");

  std::vector<Note> notes;
  const json& arr = doc["notes"];
  notes.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const json& ev = arr[i];
    const std::string where = "score: note " + std::to_string(i);
    if (!ev.is_object())
      throw std::invalid_argument(where + ": expected an object");
    for (const char* field : {"pitch", "instrument", "onset", "offset"})
      if (!ev.contains(field))
        throw std::invalid_argument(where + ": missing \"" + field + "\"");
    if (!ev["pitch"].is_number_integer())
      throw std::invalid_argument(where + ": pitch must be an integer");
    if (!ev["instrument"].is_string())
      throw std::invalid_argument(where + ": instrument must be a string");
    if (!ev["onset"].is_number() || !ev["offset"].is_number())
      throw std::invalid_argument(where + ": onset/offset must be numbers");

    Note n;
    n.pitch = ev["pitch"].get<int>();
    n.instrument = ev["instrument"].get<std::string>();
    n.onset = ev["onset"].get<double>();
    n.offset = ev["offset"].get<double>();
    if (n.pitch < kMinPitch || n.pitch > kMaxPitch)
      throw std::invalid_argument(where + ": pitch " + std::to_string(n.pitch) +
                                  " out of range [" + std::to_string(kMinPitch) +
                                  ", " + std::to_string(kMaxPitch) + "]");
    if (n.onset < 0.0)
      throw std::invalid_argument(where + ": onset must be nonnegative");
    if (!(n.offset > n.onset))
      throw std::invalid_argument(where + ": offset must be greater than onset");
    notes.push_back(std::move(n));
  }
  return notes;
}

std::vector<Note> load_score(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("score: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_score(buf.str());
}

ScoreTimeline build_timeline(const std::vector<Note>& notes,
                             double snap_tolerance) {
  if (notes.empty()) throw std::invalid_argument("empty score");

  // Collect all instants, always including 0, and snap clusters closer than
  // the tolerance to the cluster's smallest member.
  std::vector<double> instants;
  instants.reserve(2 * notes.size() + 1);
  instants.push_back(0.0);
  for (const Note& n : notes) {
    instants.push_back(n.onset);
    instants.push_back(n.offset);
  }
  std::sort(instants.begin(), instants.end());

  std::vector<double> bounds;  // snapped representatives, ascending
  std::map<double, double> snapped;  // raw instant -> representative
  for (double v : instants) {
    if (bounds.empty() || v - bounds.back() >= snap_tolerance) bounds.push_back(v);
    snapped[v] = bounds.back();
  }

  ScoreTimeline tl;
  tl.total_duration = bounds.back();
  if (bounds.size() < 2)
    throw std::invalid_argument("empty score");  // all events snapped to t=0

  for (size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double lo = bounds[i], hi = bounds[i + 1];
    const double mid = 0.5 * (lo + hi);
    std::vector<NoteKey> active;
    for (const Note& n : notes)
      if (snapped.at(n.onset) <= mid && mid < snapped.at(n.offset))
        active.push_back(n.key());
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    if (!tl.units.empty() && tl.units.back().notes == active) {
      tl.units.back().span_end = hi;  // merge with the previous unit
    } else {
      ScoreUnit u;
      u.index = static_cast<int>(tl.units.size());
      u.notes = std::move(active);
      u.span_start = lo;
      u.span_end = hi;
      tl.units.push_back(std::move(u));
    }
  }
  return tl;
}

std::vector<NoteKey> unit_union(const ScoreTimeline& timeline, int k) {
  const int K = timeline.size();
  if (k < 0 || k >= K)
    throw std::out_of_range("unit_union: unit " + std::to_string(k) +
                            " out of range [0, " + std::to_string(K) + ")");
  std::vector<NoteKey> u = timeline.units[k].notes;
  if (k + 1 < K) {
    const auto& next = timeline.units[k + 1].notes;
    u.insert(u.end(), next.begin(), next.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  return u;
}

}  // namespace salign
