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

#ifndef SELD_SRC_REAL_FFT_H_
#define SELD_SRC_REAL_FFT_H_

#include <complex>
#include <span>
#include <vector>

namespace seld::internal {

// Unnormalized real-to-complex DFT of a fixed size backed by FFTW. Forward
// returns the n/2 + 1 non-negative frequency bins; Inverse takes those bins
// and returns n samples scaled by 1/n, so Inverse(Forward(x)) == x.
// Plan creation is serialized; execution is reentrant.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return size_; }
  void Forward(std::span<const double> input,
               std::span<std::complex<double>> output) const;
  void Inverse(std::span<const std::complex<double>> input,
               std::span<double> output) const;

 private:
  int size_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace seld::internal

#endif  // SELD_SRC_REAL_FFT_H_
