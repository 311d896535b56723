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
#include <vector>

#include "spca/core.hpp"
#include "spca/parallel.hpp"

namespace spca::bench {

struct KnnResult {
  std::vector<int> predicted;
  // Fraction of test rows whose prediction equals the true label.
  double accuracy = 0.0;
};

/// k-nearest-neighbour classification in Euclidean distance, rows are
/// samples. Neighbours are ordered by (distance, training index), so an
/// exact tie goes to the lower index. With k > 1 the majority label wins;
/// a tied vote goes to the tied label whose member is nearest.
KnnResult knn_classify(const Matrix& train, const std::vector<int>& train_labels, const Matrix& test,
                       const std::vector<int>& test_labels, std::size_t k = 1, const KernelPlan& plan = {});

/// Per-class accuracy for `classes`, NaN for a class absent from the test set.
std::vector<double> per_class_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted,
                                       const std::vector<int>& classes);

}  // namespace spca::bench
