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

// Column kernels behind the parallel engine.
//
// Every backend evaluates in the same floating-point order, so all of them
// return bitwise identical results:
//   dot:  eight interleaved lane accumulators over full blocks of eight,
//         lanes folded as ((l0+l4)+(l1+l5)) + ((l2+l6)+(l3+l7)), then the
//         tail added left to right.
//   axpy, add: elementwise, product rounded before the sum (no FMA).
// The library is built with -ffp-contract=off to keep it that way.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace spca::simd {

inline constexpr std::size_t kLanes = 8;

struct KernelTable {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y += x
  void (*add)(const double* x, double* y, std::size_t n);
};

namespace generic {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void add(const double* x, double* y, std::size_t n);
}  // namespace generic

const KernelTable& generic_table();

/// nullptr unless the backend was compiled in and the CPU supports it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Every backend usable on this machine, generic first.
std::vector<const KernelTable*> available_tables();

/// Best backend, unless SPCA_SIMD names another available one
/// ("generic", "avx2", "neon"). Resolved once per process.
const KernelTable& active();

/// Pins the backend used by active(); returns false if `name` is unavailable.
bool select(std::string_view name);

}  // namespace spca::simd
