// salign/wav.h

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

#ifndef SALIGN_WAV_H_
#define SALIGN_WAV_H_

#include <string>
#include <vector>

namespace salign {

struct WavData {
  int sample_rate = 0;
  std::vector<double> samples;  // mono, in [-1, 1]
};

// Reads a RIFF/WAVE file: PCM 16-bit or IEEE float 32-bit, mono or stereo
// (stereo is averaged to mono). Throws std::runtime_error on I/O failure,
// std::invalid_argument on unsupported formats.
WavData read_wav(const std::string& path);

// Writes mono PCM 16-bit; samples are clipped to [-1, 1].
void write_wav_pcm16(const std::string& path, const std::vector<double>& samples,
                     int sample_rate);

}  // namespace salign

#endif  // SALIGN_WAV_H_
