// Copyright 2026 The spca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AArch64 only. vmulq + vaddq rather than vfmaq, matching the generic order.

#include <arm_neon.h>

#include "spca/simd.hpp"

namespace spca::simd::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t l01 = vdupq_n_f64(0.0);
  float64x2_t l23 = vdupq_n_f64(0.0);
  float64x2_t l45 = vdupq_n_f64(0.0);
  float64x2_t l67 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    l01 = vaddq_f64(l01, vmulq_f64(vld1q_f64(a + k), vld1q_f64(b + k)));
    l23 = vaddq_f64(l23, vmulq_f64(vld1q_f64(a + k + 2), vld1q_f64(b + k + 2)));
    l45 = vaddq_f64(l45, vmulq_f64(vld1q_f64(a + k + 4), vld1q_f64(b + k + 4)));
    l67 = vaddq_f64(l67, vmulq_f64(vld1q_f64(a + k + 6), vld1q_f64(b + k + 6)));
  }
  const float64x2_t f01 = vaddq_f64(l01, l45);
  const float64x2_t f23 = vaddq_f64(l23, l67);
  double s = (vgetq_lane_f64(f01, 0) + vgetq_lane_f64(f01, 1)) +
             (vgetq_lane_f64(f23, 0) + vgetq_lane_f64(f23, 1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void add(const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += x[i];
}

extern const KernelTable kTable{"neon", &dot, &axpy, &add};

}  // namespace spca::simd::neon
