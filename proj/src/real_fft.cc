/*
Copyright 2026 The SELD Front-end Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "real_fft.h"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <mutex>

namespace seld::internal {

namespace {

std::mutex& PlannerMutex() {
  static std::mutex mutex;
  return mutex;
}

struct FftwBuffer {
  explicit FftwBuffer(size_t bytes) : ptr(fftw_malloc(bytes)) {}
  ~FftwBuffer() { fftw_free(ptr); }
  void* ptr;
};

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  assert(size > 0);
  FftwBuffer real(sizeof(double) * size);
  FftwBuffer spectrum(sizeof(fftw_complex) * (size / 2 + 1));
  std::lock_guard<std::mutex> lock(PlannerMutex());
  forward_plan_ = fftw_plan_dft_r2c_1d(
      size, static_cast<double*>(real.ptr),
      static_cast<fftw_complex*>(spectrum.ptr), FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(
      size, static_cast<fftw_complex*>(spectrum.ptr),
      static_cast<double*>(real.ptr), FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::Forward(std::span<const double> input,
                      std::span<std::complex<double>> output) const {
  assert(input.size() == static_cast<size_t>(size_));
  assert(output.size() == static_cast<size_t>(size_ / 2 + 1));
  FftwBuffer real(sizeof(double) * size_);
  FftwBuffer spectrum(sizeof(fftw_complex) * (size_ / 2 + 1));
  std::copy(input.begin(), input.end(), static_cast<double*>(real.ptr));
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_),
                       static_cast<double*>(real.ptr),
                       static_cast<fftw_complex*>(spectrum.ptr));
  const auto* bins = static_cast<const std::complex<double>*>(spectrum.ptr);
  std::copy(bins, bins + output.size(), output.begin());
}

void RealFft::Inverse(std::span<const std::complex<double>> input,
                      std::span<double> output) const {
  assert(input.size() == static_cast<size_t>(size_ / 2 + 1));
  assert(output.size() == static_cast<size_t>(size_));
  FftwBuffer real(sizeof(double) * size_);
  FftwBuffer spectrum(sizeof(fftw_complex) * (size_ / 2 + 1));
  std::copy(input.begin(), input.end(),
            static_cast<std::complex<double>*>(spectrum.ptr));
  // c2r destroys its input, which is our private copy.
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       static_cast<fftw_complex*>(spectrum.ptr),
                       static_cast<double*>(real.ptr));
  const double scale = 1.0 / size_;
  const auto* samples = static_cast<const double*>(real.ptr);
  for (int i = 0; i < size_; ++i) output[i] = samples[i] * scale;
}

}  // namespace seld::internal
