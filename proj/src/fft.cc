// salign/fft.cc

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

#include "salign/fft.h"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace salign {

namespace {
// The FFTW planner is not thread-safe.
std::mutex g_planner_mutex;
}  // namespace

RealFft::RealFft(size_t n) : n_(n), plan_(nullptr) {
  if (n == 0) throw std::invalid_argument("RealFft: size must be positive");
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  // FFTW_UNALIGNED lets the plan execute on arbitrary caller buffers.
  std::vector<double> in(n_);
  std::vector<double> out(2 * (n_ / 2 + 1));
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), in.data(),
                               reinterpret_cast<fftw_complex*>(out.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_) throw std::runtime_error("RealFft: planning failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

void RealFft::magnitude(const double* in, double* out, double* scratch) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_),
                       const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(scratch));
  const size_t bins = num_bins();
  for (size_t k = 0; k < bins; ++k)
    out[k] = std::hypot(scratch[2 * k], scratch[2 * k + 1]);
}

}  // namespace salign
