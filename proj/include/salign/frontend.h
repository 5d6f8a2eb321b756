// salign/frontend.h

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

#ifndef SALIGN_FRONTEND_H_
#define SALIGN_FRONTEND_H_

#include <span>
#include <string>
#include <vector>

namespace salign {

enum class Window { kHann, kHamming, kRect };

Window window_from_name(const std::string& name);
std::string window_name(Window w);

// Analysis parameters shared by spectrograms and template banks.
struct FrontendConfig {
  int sample_rate = 22050;
  int fft_size = 4096;
  int hop_size = 256;
  Window window = Window::kHann;

  int num_bins() const { return fft_size / 2 + 1; }
  double bin_hz() const { return double(sample_rate) / fft_size; }
  double hop_s() const { return double(hop_size) / sample_rate; }
  // Center time of frame t under the [t*hop, t*hop + fft) coverage.
  double frame_center_s(int t) const {
    return (double(t) * hop_size + fft_size / 2.0) / sample_rate;
  }
  // Throws std::invalid_argument unless fft_size is a power of two and
  // 0 < hop_size <= fft_size.
  void validate() const;
};

// Same analysis grid: sample rate, FFT size and hop. The window is not part
// of the on-disk spectrogram header, so it is not compared here.
bool config_compatible(const FrontendConfig& a, const FrontendConfig& b);

// T x F magnitude frames, row-major by frame.
struct Spectrogram {
  std::vector<double> data;
  int num_frames = 0;
  int num_bins = 0;
  FrontendConfig config;
  bool normalized = false;

  std::span<double> frame(int t) {
    return {data.data() + size_t(t) * num_bins, size_t(num_bins)};
  }
  std::span<const double> frame(int t) const {
    return {data.data() + size_t(t) * num_bins, size_t(num_bins)};
  }
  // A frame is silent when it is identically zero (the Eq.-5 normalizer
  // leaves zero frames untouched and flags them through this predicate).
  bool frame_silent(int t) const;
};

// Window coefficients, periodic form, length n.
std::vector<double> make_window(Window w, int n);

// Magnitude STFT: frame t covers samples [t*hop, t*hop + fft), windowed.
// T = floor((N - fft)/hop) + 1. Throws std::invalid_argument when fewer
// than fft_size samples are given ("input too short").
Spectrogram stft_magnitude(std::span<const double> samples,
                           const FrontendConfig& config, int threads = 0);

// v <- v / ||v||_2. Returns true (silent) when v is all zero, leaving it
// unchanged; callers treat silent frames specially.
bool normalize_frame(std::span<double> v);

// Every frame through normalize_frame; sets the normalized flag.
Spectrogram normalize_spectrogram(Spectrogram s, int threads = 0);

// Binary spectrogram format, magic "SALSPEC1": little-endian header
// (u32 T, u32 F, u32 sample_rate, u32 fft_size, u32 hop_size, u8 normalized)
// then T*F f32 values row-major by frame.
void save_spectrogram(const Spectrogram& s, const std::string& path);
Spectrogram load_spectrogram(const std::string& path);

}  // namespace salign

#endif  // SALIGN_FRONTEND_H_
