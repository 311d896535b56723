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
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "spca/bench/dataset.hpp"
#include "spca/core.hpp"

namespace spca::bench {

/// splitmix64 over the base seed and each tag in turn.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// rows x cols matrix of independent standard Gaussian entries.
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Labeled data whose class structure lives on a few sparse directions.
///
/// Factor k is a unit vector supported on its own block of `support`
/// consecutive features. Each class draws a mean score per factor from
/// N(0, scale_k^2); a sample adds N(0, (within * scale_k)^2) to every score,
/// maps the scores through the factors and adds dense N(0, noise^2) to all
/// features.
struct SparseFactorSpec {
  std::size_t classes = 20;
  std::size_t per_class = 72;
  std::size_t features = 1000;
  std::size_t factors = 5;
  std::size_t support = 10;
  // One entry per factor; a shorter list repeats its last entry.
  std::vector<double> scale{3.0, 2.7, 2.4, 2.1, 1.8};
  double within = 0.25;
  double noise = 1.0;
  std::uint64_t seed = 1;
};

LabeledDataset make_sparse_factor_dataset(const SparseFactorSpec& spec);

/// The planted n x factors loading matrix of the generator.
Matrix sparse_factor_loadings(const SparseFactorSpec& spec);

}  // namespace spca::bench
