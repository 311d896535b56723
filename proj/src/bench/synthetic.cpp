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

#include "spca/bench/synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace spca::bench {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check(const SparseFactorSpec& spec) {
  if (spec.classes < 2 || spec.per_class < 1) throw ArgumentError("sparse factor data needs >= 2 classes");
  if (spec.factors < 1 || spec.support < 1) throw ArgumentError("sparse factor data needs factors and support");
  if (spec.factors * spec.support > spec.features) {
    throw ArgumentError("sparse factor supports (" + std::to_string(spec.factors * spec.support) +
                        " features) exceed the feature count " + std::to_string(spec.features));
  }
  if (spec.scale.empty()) throw ArgumentError("sparse factor data needs at least one scale");
  if (!(spec.within >= 0.0) || !(spec.noise >= 0.0)) throw ArgumentError("sparse factor spreads must be >= 0");
}

double scale_of(const SparseFactorSpec& spec, std::size_t k) {
  return spec.scale[std::min(k, spec.scale.size() - 1)];
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t s = splitmix64(base);
  for (std::uint64_t t : tags) s = splitmix64(s ^ splitmix64(t + 0x632BE59BD9B4E019ULL));
  return s;
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) out(r, c) = normal(rng);
  }
  return out;
}

Matrix sparse_factor_loadings(const SparseFactorSpec& spec) {
  check(spec);
  std::mt19937_64 rng(derive_seed(spec.seed, {0}));
  std::normal_distribution<double> normal;
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(spec.features), static_cast<Eigen::Index>(spec.factors));
  for (std::size_t k = 0; k < spec.factors; ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    for (std::size_t s = 0; s < spec.support; ++s) {
      // Magnitudes bounded away from zero keep every support entry visible.
      const double w = normal(rng);
      v(static_cast<Eigen::Index>(k * spec.support + s), col) = (w < 0.0 ? -1.0 : 1.0) * (0.5 + std::abs(w));
    }
    v.col(col).normalize();
  }
  return v;
}

LabeledDataset make_sparse_factor_dataset(const SparseFactorSpec& spec) {
  const Matrix v = sparse_factor_loadings(spec);
  std::mt19937_64 rng(derive_seed(spec.seed, {1}));
  std::normal_distribution<double> normal;
  const auto factors = static_cast<Eigen::Index>(spec.factors);

  Matrix means(static_cast<Eigen::Index>(spec.classes), factors);
  for (Eigen::Index c = 0; c < means.rows(); ++c) {
    for (Eigen::Index k = 0; k < factors; ++k) means(c, k) = scale_of(spec, static_cast<std::size_t>(k)) * normal(rng);
  }

  LabeledDataset data;
  const std::size_t total = spec.classes * spec.per_class;
  data.samples.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(spec.features));
  data.labels.reserve(total);
  Vector scores(factors);
  Eigen::Index row = 0;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    for (std::size_t s = 0; s < spec.per_class; ++s, ++row) {
      for (Eigen::Index k = 0; k < factors; ++k) {
        scores[k] = means(static_cast<Eigen::Index>(c), k) +
                    spec.within * scale_of(spec, static_cast<std::size_t>(k)) * normal(rng);
      }
      data.samples.row(row) = (v * scores).transpose();
      for (Eigen::Index f = 0; f < data.samples.cols(); ++f) data.samples(row, f) += spec.noise * normal(rng);
      data.labels.push_back(static_cast<int>(c));
    }
  }
  return data;
}

}  // namespace spca::bench
