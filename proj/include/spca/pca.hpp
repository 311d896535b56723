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

#pragma once

#include <cstddef>

#include "spca/core.hpp"

namespace spca {

/// Dense PCA fitted on a samples x variables matrix.
struct PcaModel {
  Matrix components;      // n x m, orthonormal columns
  Vector singular_values; // m, non-increasing
  Vector mean;            // n, subtracted before projecting
};

/// Top-m right singular vectors of the column-centered samples. Each
/// component is signed so that its largest-magnitude entry is positive.
/// Throws ArgumentError if m is 0 or exceeds min(#samples, #variables).
PcaModel pca_fit(const Matrix& samples, std::size_t m);

/// (samples - 1 mean^T) * loadings.
Matrix project(const Matrix& samples, const Matrix& loadings, const Vector& mean);
Matrix project(const PcaModel& model, const Matrix& samples);

/// Variance captured by each loading column, crediting column j only with
/// what is left after projecting out the span of columns 1..j-1. Samples are
/// centered internally; divisor is #samples - 1.
Vector explained_variance(const Matrix& samples, const Matrix& loadings);

/// Flips each column so its largest-magnitude entry is positive (first one
/// on ties). Zero columns are left alone.
void canonicalize_signs(Matrix& loadings);

}  // namespace spca
