// salign/frontend.cc

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

#include "salign/frontend.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "salign/fft.h"
#include "salign/parallel.h"

namespace salign {

namespace {

constexpr char kSpecMagic[8] = {'S', 'A', 'L', 'S', 'P', 'E', 'C', '1'};

void put_u32le(std::ofstream& out, uint32_t v) {
  uint8_t b[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t get_u32le(std::ifstream& in) {
  uint8_t b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}

void put_f32le(std::ofstream& out, float v) {
  uint32_t u;
  std::memcpy(&u, &v, 4);
  put_u32le(out, u);
}

float get_f32le(std::ifstream& in) {
  const uint32_t u = get_u32le(in);
  float v;
  std::memcpy(&v, &u, 4);
  return v;
}

}  // namespace

Window window_from_name(const std::string& name) {
  if (name == "hann") return Window::kHann;
  if (name == "hamming") return Window::kHamming;
  if (name == "rect") return Window::kRect;
  throw std::invalid_argument("unknown window \"" + name +
                              "\" (expected hann, hamming or rect)");
}

std::string window_name(Window w) {
  switch (w) {
    case Window::kHann: return "hann";
    case Window::kHamming: return "hamming";
    case Window::kRect: return "rect";
  }
  return "hann";
}

void FrontendConfig::validate() const {
  if (sample_rate <= 0)
    throw std::invalid_argument("config: sample_rate must be positive");
  if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
    throw std::invalid_argument("config: fft_size must be a power of two");
  if (hop_size <= 0 || hop_size > fft_size)
    throw std::invalid_argument("config: need 0 < hop_size <= fft_size");
}

bool config_compatible(const FrontendConfig& a, const FrontendConfig& b) {
  return a.sample_rate == b.sample_rate && a.fft_size == b.fft_size &&
         a.hop_size == b.hop_size;
}

bool Spectrogram::frame_silent(int t) const {
  for (double v : frame(t))
    if (v != 0.0) return false;
  return true;
}

std::vector<double> make_window(Window w, int n) {
  std::vector<double> win(n, 1.0);
  const double step = 2.0 * std::numbers::pi / n;
  switch (w) {
    case Window::kHann:
      for (int i = 0; i < n; ++i) win[i] = 0.5 - 0.5 * std::cos(step * i);
      break;
    case Window::kHamming:
      for (int i = 0; i < n; ++i) win[i] = 0.54 - 0.46 * std::cos(step * i);
      break;
    case Window::kRect:
      break;
  }
  return win;
}

Spectrogram stft_magnitude(std::span<const double> samples,
                           const FrontendConfig& config, int threads) {
  config.validate();
  const int n = config.fft_size;
  const int hop = config.hop_size;
  if (samples.size() < size_t(n))
    throw std::invalid_argument("stft: input too short (" +
                                std::to_string(samples.size()) + " < " +
                                std::to_string(n) + " samples)");
  const int T = static_cast<int>((samples.size() - n) / hop) + 1;
  const int F = config.num_bins();

  Spectrogram s;
  s.config = config;
  s.num_frames = T;
  s.num_bins = F;
  s.data.resize(size_t(T) * F);

  const std::vector<double> win = make_window(config.window, n);
  const RealFft fft(n);
  parallel_for(T, threads, [&](size_t begin, size_t end) {
    std::vector<double> buf(n);
    std::vector<double> scratch(fft.scratch_size());
    for (size_t t = begin; t < end; ++t) {
      const double* src = samples.data() + t * hop;
      for (int i = 0; i < n; ++i) buf[i] = src[i] * win[i];
      fft.magnitude(buf.data(), s.data.data() + t * F, scratch.data());
    }
  });
  return s;
}

bool normalize_frame(std::span<double> v) {
  double sumsq = 0.0;
  for (double x : v) sumsq += x * x;
  if (sumsq == 0.0) return true;
  const double inv = 1.0 / std::sqrt(sumsq);
  for (double& x : v) x *= inv;
  return false;
}

Spectrogram normalize_spectrogram(Spectrogram s, int threads) {
  parallel_for(s.num_frames, threads, [&](size_t begin, size_t end) {
    for (size_t t = begin; t < end; ++t) normalize_frame(s.frame(int(t)));
  });
  s.normalized = true;
  return s;
}

void save_spectrogram(const Spectrogram& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("spectrogram: cannot write " + path);
  out.write(kSpecMagic, 8);
  put_u32le(out, uint32_t(s.num_frames));
  put_u32le(out, uint32_t(s.num_bins));
  put_u32le(out, uint32_t(s.config.sample_rate));
  put_u32le(out, uint32_t(s.config.fft_size));
  put_u32le(out, uint32_t(s.config.hop_size));
  const char norm = s.normalized ? 1 : 0;
  out.write(&norm, 1);
  for (double v : s.data) put_f32le(out, float(v));
  if (!out) throw std::runtime_error("spectrogram: write failed: " + path);
}

Spectrogram load_spectrogram(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("spectrogram: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kSpecMagic, 8) != 0)
    throw std::invalid_argument("spectrogram: bad magic in " + path);
  Spectrogram s;
  s.num_frames = int(get_u32le(in));
  s.num_bins = int(get_u32le(in));
  s.config.sample_rate = int(get_u32le(in));
  s.config.fft_size = int(get_u32le(in));
  s.config.hop_size = int(get_u32le(in));
  char norm = 0;
  in.read(&norm, 1);
  s.normalized = norm != 0;
  if (s.num_bins != s.config.num_bins())
    throw std::invalid_argument("spectrogram: inconsistent header in " + path);
  s.data.resize(size_t(s.num_frames) * s.num_bins);
  for (double& v : s.data) v = get_f32le(in);
  if (!in) throw std::runtime_error("spectrogram: truncated file: " + path);
  return s;
}

}  // namespace salign
