// salign/wav.cc

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

#include "salign/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace salign {

namespace {

uint32_t read_u32le(const uint8_t* p) {
  return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
         uint32_t(p[3]) << 24;
}

uint16_t read_u16le(const uint8_t* p) { return uint16_t(p[0]) | uint16_t(p[1]) << 8; }

void put_u32le(std::ofstream& out, uint32_t v) {
  uint8_t b[4] = {uint8_t(v), uint8_t(v >> 8), uint8_t(v >> 16), uint8_t(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u16le(std::ofstream& out, uint16_t v) {
  uint8_t b[2] = {uint8_t(v), uint8_t(v >> 8)};
  out.write(reinterpret_cast<const char*>(b), 2);
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("wav: cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw std::invalid_argument("wav: not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t size = read_u32le(bytes.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size())
      throw std::invalid_argument("wav: truncated chunk in " + path);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) throw std::invalid_argument("wav: bad fmt chunk in " + path);
      format = read_u16le(bytes.data() + body);
      channels = read_u16le(bytes.data() + body + 2);
      sample_rate = read_u32le(bytes.data() + body + 4);
      bits = read_u16le(bytes.data() + body + 14);
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }
  if (!data || sample_rate == 0)
    throw std::invalid_argument("wav: missing fmt/data chunk in " + path);
  if (channels != 1 && channels != 2)
    throw std::invalid_argument("wav: only mono or stereo supported: " + path);

  const bool pcm16 = (format == 1 && bits == 16);
  const bool f32 = (format == 3 && bits == 32);
  if (!pcm16 && !f32)
    throw std::invalid_argument(
        "wav: unsupported format (need PCM 16-bit or float 32-bit): " + path);

  const size_t bytes_per_sample = pcm16 ? 2 : 4;
  const size_t frames = data_size / (bytes_per_sample * channels);

  WavData w;
  w.sample_rate = static_cast<int>(sample_rate);
  w.samples.resize(frames);
  for (size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      const uint8_t* p = data + (i * channels + c) * bytes_per_sample;
      if (pcm16) {
        int16_t v;
        std::memcpy(&v, p, 2);
        acc += v / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        acc += v;
      }
    }
    w.samples[i] = acc / channels;
  }
  return w;
}

void write_wav_pcm16(const std::string& path, const std::vector<double>& samples,
                     int sample_rate) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("wav: cannot write " + path);
  const uint32_t data_size = static_cast<uint32_t>(samples.size() * 2);
  out.write("RIFF", 4);
  put_u32le(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32le(out, 16);
  put_u16le(out, 1);  // PCM
  put_u16le(out, 1);  // mono
  put_u32le(out, static_cast<uint32_t>(sample_rate));
  put_u32le(out, static_cast<uint32_t>(sample_rate * 2));
  put_u16le(out, 2);
  put_u16le(out, 16);
  out.write("data", 4);
  put_u32le(out, data_size);
  for (double s : samples) {
    const double clipped = std::clamp(s, -1.0, 1.0);
    const int16_t v = static_cast<int16_t>(std::lrint(clipped * 32767.0));
    put_u16le(out, static_cast<uint16_t>(v));
  }
  if (!out) throw std::runtime_error("wav: write failed: " + path);
}

}  // namespace salign
