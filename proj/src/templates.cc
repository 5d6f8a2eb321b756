// salign/templates.cc

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

#include "salign/templates.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace salign {

namespace {

using nlohmann::json;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0;
  return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
}

// Raised-cosine window mainlobe in the large-N limit, peak-normalized:
// [a0*sinc(d) + a1/2*(sinc(d-1) + sinc(d+1))] / a0, support |d| <= 2.
double raised_cosine_mainlobe(double a0, double a1, double d) {
  if (std::abs(d) >= 2.0) return 0.0;
  const double v = a0 * sinc(d) + 0.5 * a1 * (sinc(d - 1.0) + sinc(d + 1.0));
  return std::abs(v) / a0;
}

void validate_template(const NoteTemplate& t, int expected_bins) {
  if (int(t.spectrum.size()) != expected_bins)
    throw std::invalid_argument("template " + NoteKey{t.pitch, t.instrument}.str() +
                                ": spectrum length " +
                                std::to_string(t.spectrum.size()) +
                                " != " + std::to_string(expected_bins));
  double sumsq = 0.0;
  for (double v : t.spectrum) {
    if (!(v >= 0.0))
      throw std::invalid_argument("template " +
                                  NoteKey{t.pitch, t.instrument}.str() +
                                  ": negative or NaN entry");
    sumsq += v * v;
  }
  if (std::abs(std::sqrt(sumsq) - 1.0) > 1e-9)
    throw std::invalid_argument("template " + NoteKey{t.pitch, t.instrument}.str() +
                                ": spectrum is not unit norm");
}

}  // namespace

TemplateBank::TemplateBank(FrontendConfig config) : config_(config) {
  config_.validate();
}

bool TemplateBank::contains(const NoteKey& key) const {
  return templates_.count(key) > 0;
}

const NoteTemplate& TemplateBank::lookup(const NoteKey& key) const {
  auto it = templates_.find(key);
  if (it == templates_.end())
    throw std::out_of_range("template missing: " + key.str());
  return it->second;
}

void TemplateBank::insert(NoteTemplate t) {
  validate_template(t, config_.num_bins());
  templates_[NoteKey{t.pitch, t.instrument}] = std::move(t);
}

double note_frequency_hz(int pitch) {
  return 440.0 * std::pow(2.0, (pitch - 69) / 12.0);
}

NoteTemplate learn_template(std::span<const double> samples, int pitch,
                            const std::string& instrument,
                            const FrontendConfig& config) {
  const Spectrogram s = stft_magnitude(samples, config);
  const int F = s.num_bins;

  std::vector<double> energy(s.num_frames);
  double max_energy = 0.0;
  for (int t = 0; t < s.num_frames; ++t) {
    double e = 0.0;
    for (double v : s.frame(t)) e += v * v;
    energy[t] = e;
    max_energy = std::max(max_energy, e);
  }
  if (max_energy <= 0.0) throw std::invalid_argument("silent recording");

  // Average the sustain frames, then Eq.-5 normalize the average.
  const double gate = 0.1 * max_energy;
  std::vector<double> avg(F, 0.0);
  int count = 0;
  for (int t = 0; t < s.num_frames; ++t) {
    if (energy[t] < gate) continue;
    const auto fr = s.frame(t);
    for (int f = 0; f < F; ++f) avg[f] += fr[f];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("silent recording");
  for (double& v : avg) v /= count;
  if (normalize_frame(avg)) throw std::invalid_argument("silent recording");

  return NoteTemplate{pitch, instrument, std::move(avg)};
}

double window_mainlobe(Window w, double offset) {
  switch (w) {
    case Window::kHann: return raised_cosine_mainlobe(0.5, 0.5, offset);
    case Window::kHamming: return raised_cosine_mainlobe(0.54, 0.46, offset);
    case Window::kRect:
      return std::abs(offset) >= 1.0 ? 0.0 : std::abs(sinc(offset));
  }
  return 0.0;
}

NoteTemplate synth_template(int pitch, const std::string& instrument,
                            const InstrumentProfile& profile,
                            const FrontendConfig& config) {
  config.validate();
  if (profile.partial_count < 1)
    throw std::invalid_argument("synth_template: need at least one partial");
  const double f0 = note_frequency_hz(pitch);
  const double nyquist = config.sample_rate / 2.0;
  if (f0 >= nyquist)
    throw std::invalid_argument("synth_template: fundamental " +
                                std::to_string(f0) + " Hz is at or above Nyquist");

  const int F = config.num_bins();
  std::vector<double> spectrum(F, 0.0);
  for (int h = 1; h <= profile.partial_count; ++h) {
    const double freq = h * f0;
    if (freq >= nyquist) break;  // clip the partial count at Nyquist
    const double center_bin = freq / config.bin_hz();
    const double amp = std::pow(double(h), -profile.partial_decay);
    const int lo = std::max(0, int(std::ceil(center_bin - 2.0)));
    const int hi = std::min(F - 1, int(std::floor(center_bin + 2.0)));
    for (int b = lo; b <= hi; ++b)
      spectrum[b] += amp * window_mainlobe(config.window, b - center_bin);
  }
  if (normalize_frame(spectrum))
    throw std::invalid_argument("synth_template: empty spectrum");
  return NoteTemplate{pitch, instrument, std::move(spectrum)};
}

void save_bank(const TemplateBank& bank, const std::string& path) {
  json doc;
  const FrontendConfig& c = bank.config();
  doc["config"] = {{"sample_rate", c.sample_rate},
                   {"fft_size", c.fft_size},
                   {"hop_size", c.hop_size},
                   {"window", window_name(c.window)}};
  doc["templates"] = json::array();
  for (const auto& [key, t] : bank.all()) {
    json entry;
    entry["pitch"] = t.pitch;
    entry["instrument"] = t.instrument;
    entry["spectrum"] = t.spectrum;
    doc["templates"].push_back(std::move(entry));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("bank: cannot write " + path);
  out << doc.dump() << "\n";
  if (!out) throw std::runtime_error("bank: write failed: " + path);
}

TemplateBank load_bank(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("bank: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("bank: JSON parse error in " + path + ": " +
                                e.what());
  }
  if (!doc.contains("config") || !doc.contains("templates"))
    throw std::invalid_argument("bank: missing config/templates in " + path);

  FrontendConfig c;
  const json& jc = doc["config"];
  c.sample_rate = jc.at("sample_rate").get<int>();
  c.fft_size = jc.at("fft_size").get<int>();
  c.hop_size = jc.at("hop_size").get<int>();
  c.window = window_from_name(jc.value("window", "hann"));

  TemplateBank bank(c);
  for (const json& entry : doc["templates"]) {
    NoteTemplate t;
    t.pitch = entry.at("pitch").get<int>();
    t.instrument = entry.at("instrument").get<std::string>();
    t.spectrum = entry.at("spectrum").get<std::vector<double>>();
    bank.insert(std::move(t));
  }
  return bank;
}

}  // namespace salign
