// salign/fft.h

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

#ifndef SALIGN_FFT_H_
#define SALIGN_FFT_H_

#include <cstddef>
#include <memory>

namespace salign {

// Real-input DFT of a fixed size, backed by FFTW. Plan creation is
// serialized internally; magnitude() is safe to call concurrently as long
// as each thread passes its own scratch buffer.
class RealFft {
 public:
  explicit RealFft(size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  size_t size() const { return n_; }
  size_t num_bins() const { return n_ / 2 + 1; }
  // Bytes of scratch magnitude() needs, as a count of doubles.
  size_t scratch_size() const { return 2 * (n_ / 2 + 1); }

  // out[k] = |DFT(in)[k]| for k in [0, n/2]; scratch holds interleaved
  // complex output, scratch_size() doubles. in is not modified.
  void magnitude(const double* in, double* out, double* scratch) const;

 private:
  size_t n_;
  void* plan_;  // fftw_plan
};

}  // namespace salign

#endif  // SALIGN_FFT_H_
