// salign/templates.h

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

#ifndef SALIGN_TEMPLATES_H_
#define SALIGN_TEMPLATES_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "salign/frontend.h"
#include "salign/score.h"

namespace salign {

// Unit-norm magnitude spectrum of one (pitch, instrument).
struct NoteTemplate {
  int pitch = 0;
  std::string instrument;
  std::vector<double> spectrum;  // length F, nonnegative, ||.||_2 == 1
};

// Synthetic harmonic profile: partial h has peak amplitude h^(-decay).
struct InstrumentProfile {
  double partial_decay = 1.0;
  int partial_count = 20;
};

// Immutable after construction; all templates share one FrontendConfig and
// lookups of missing keys fail loudly.
class TemplateBank {
 public:
  explicit TemplateBank(FrontendConfig config);

  const FrontendConfig& config() const { return config_; }
  size_t size() const { return templates_.size(); }
  bool contains(const NoteKey& key) const;
  // Throws std::out_of_range naming the key when absent.
  const NoteTemplate& lookup(const NoteKey& key) const;
  void insert(NoteTemplate t);  // validates length, nonnegativity, unit norm
  const std::map<NoteKey, NoteTemplate>& all() const { return templates_; }

 private:
  FrontendConfig config_;
  std::map<NoteKey, NoteTemplate> templates_;
};

double note_frequency_hz(int pitch);  // 440 * 2^((pitch-69)/12)

// Unit-norm average of the recording's sustain frames (those with energy
// >= 10% of the maximum frame energy). Throws std::invalid_argument on
// digital silence ("silent recording").
NoteTemplate learn_template(std::span<const double> samples, int pitch,
                            const std::string& instrument,
                            const FrontendConfig& config);

// Harmonic comb: one window-mainlobe-shaped peak per partial h = 1..H at
// h*f0, peak amplitude h^(-decay); partials at or above Nyquist are
// dropped. Throws when the fundamental itself is >= Nyquist.
NoteTemplate synth_template(int pitch, const std::string& instrument,
                            const InstrumentProfile& profile,
                            const FrontendConfig& config);

// Peak-normalized spectral mainlobe of `w` at `offset` bins from center;
// zero outside the mainlobe. Exposed for tests.
double window_mainlobe(Window w, double offset);

// Bank JSON: {"config": {...}, "templates": [{"pitch", "instrument",
// "spectrum"}, ...]}.
void save_bank(const TemplateBank& bank, const std::string& path);
TemplateBank load_bank(const std::string& path);

}  // namespace salign

#endif  // SALIGN_TEMPLATES_H_
