// salign/score.h

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

#ifndef SALIGN_SCORE_H_
#define SALIGN_SCORE_H_

#include <compare>
#include <string>
#include <vector>

namespace salign {

constexpr int kMinPitch = 21;   // A0
constexpr int kMaxPitch = 108;  // C8

// (pitch, instrument) pair identifying one note template.
struct NoteKey {
  int pitch = 0;
  std::string instrument;

  auto operator<=>(const NoteKey&) const = default;
  std::string str() const;
};

// One score event, times in seconds.
struct Note {
  int pitch = 0;
  std::string instrument;
  double onset = 0.0;
  double offset = 0.0;

  NoteKey key() const { return NoteKey{pitch, instrument}; }
};

// Maximal span of constant concurrent-note content. An empty note set is a
// rest (silence unit).
struct ScoreUnit {
  int index = 0;
  std::vector<NoteKey> notes;  // sorted, unique
  double span_start = 0.0;
  double span_end = 0.0;

  bool is_silence() const { return notes.empty(); }
};

// Ordered unit sequence tiling [0, total_duration] exactly; the k axis of
// the alignment.
struct ScoreTimeline {
  std::vector<ScoreUnit> units;
  double total_duration = 0.0;

  int size() const { return static_cast<int>(units.size()); }
};

// Parses the score JSON document ({"notes":[{"pitch","instrument","onset",
// "offset"},...]}, unknown keys ignored). Throws std::invalid_argument on
// malformed JSON (message carries the line) or on a note violating the
// pitch/time invariants (message names the event).
std::vector<Note> parse_score(const std::string& document);

// parse_score on the contents of a file.
std::vector<Note> load_score(const std::string& path);

// Segments the notes into score units with a sweep line over all note
// onsets/offsets. Instants closer than snap_tolerance are snapped together.
// Gaps become silence units; adjacent units with equal note sets merge.
// Throws std::invalid_argument on an empty note list.
ScoreTimeline build_timeline(const std::vector<Note>& notes,
                             double snap_tolerance = 1e-3);

// notes(k) ∪ notes(k+1); for the last unit, notes(K-1) alone.
// Throws std::out_of_range for k outside [0, K).
std::vector<NoteKey> unit_union(const ScoreTimeline& timeline, int k);

}  // namespace salign

#endif  // SALIGN_SCORE_H_
