// salign/patterns.h

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

#ifndef SALIGN_PATTERNS_H_
#define SALIGN_PATTERNS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "salign/score.h"
#include "salign/templates.h"

namespace salign {

// Per-unit amplitudes and composite basis. basis is the unit-norm weighted
// template sum; basis_gain is the norm that was divided out, so
// alphas / basis_gain are the amplitudes on the scale of a unit-norm frame.
struct UnitPattern {
  int unit_index = 0;
  std::vector<std::pair<NoteKey, double>> alphas;  // sorted by key
  std::vector<double> basis;
  double basis_gain = 0.0;
  bool degenerate = false;

  bool is_silence() const { return alphas.empty(); }
  // Amplitude for one key, 0.0 when absent.
  double alpha_for(const NoteKey& key) const;
};

// Rendered excerpt of one unit: T x F magnitude frames plus the temporal
// activity that generated them (empty for the default constant-1 envelope).
struct TrainingRender {
  int unit_index = 0;
  std::vector<double> frames;  // row-major T x F
  int num_frames = 0;
  int num_bins = 0;
  std::vector<double> gains;

  std::span<const double> frame(int t) const {
    return {frames.data() + size_t(t) * num_bins, size_t(num_bins)};
  }
};

struct FitOptions {
  double beta = 2.0;
  int max_iters = 100;
  double tol = 1e-5;
};

struct TrainOptions {
  FitOptions fit;
  double render_duration = 1.0;  // seconds of synthetic render per unit
  int threads = 0;
};

// Per-iteration objective values, for convergence diagnostics.
struct FitTrace {
  std::vector<double> objective;
};

// Spectral-domain rendering: frame tau = envelope[tau] * sum of the unit's
// templates. Default envelope is constant 1; a supplied envelope must have
// floor(duration * sr / hop) entries. Throws on silence units, missing
// templates, or a duration shorter than one frame.
TrainingRender render_unit(const ScoreUnit& unit, const TemplateBank& bank,
                           double duration_s,
                           std::span<const double> envelope = {});

// Alternating multiplicative updates minimizing the beta-divergence between
// the render and g(tau) * sum alpha * n. The g/alpha scale is fixed by
// max g == 1; the basis is the normalized weighted template sum. Throws
// std::invalid_argument on an all-zero render and std::logic_error if the
// objective increases (implementation bug for beta in [1, 2]).
UnitPattern fit_pattern(const TrainingRender& render, const ScoreUnit& unit,
                        const TemplateBank& bank, const FitOptions& options = {},
                        FitTrace* trace = nullptr);

// One pattern per unit, in timeline order; silence units get the empty
// pattern. Units are fitted independently (parallel when threads != 1).
std::vector<UnitPattern> build_all_patterns(const ScoreTimeline& timeline,
                                            const TemplateBank& bank,
                                            const TrainOptions& options = {});

// Pattern from explicit amplitudes; computes basis and basis_gain.
UnitPattern make_pattern(int unit_index,
                         std::vector<std::pair<NoteKey, double>> alphas,
                         const TemplateBank& bank);

// Patterns JSON: {"units": [{"k", "alphas": [{"pitch", "instrument",
// "alpha"}], "basis"}, ...]}. Loading recomputes basis_gain from the bank
// and cross-checks the stored basis.
void save_patterns(const std::vector<UnitPattern>& patterns,
                   const std::string& path);
std::vector<UnitPattern> load_patterns(const std::string& path,
                                       const TemplateBank& bank);

}  // namespace salign

#endif  // SALIGN_PATTERNS_H_
