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

#include "spca/bench/knn.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

namespace spca::bench {

KnnResult knn_classify(const Matrix& train, const std::vector<int>& train_labels, const Matrix& test,
                       const std::vector<int>& test_labels, std::size_t k, const KernelPlan& plan) {
  const auto n_train = static_cast<std::size_t>(train.rows());
  const auto n_test = static_cast<std::size_t>(test.rows());
  if (train.cols() != test.cols()) {
    throw ArgumentError("knn: train has " + std::to_string(train.cols()) + " features, test " +
                        std::to_string(test.cols()));
  }
  if (train_labels.size() != n_train) throw ArgumentError("knn: one label per training row required");
  if (!test_labels.empty() && test_labels.size() != n_test) throw ArgumentError("knn: one label per test row required");
  if (n_train == 0) throw ArgumentError("knn: empty training set");
  if (k < 1 || k > n_train) throw ArgumentError("knn: k = " + std::to_string(k) + " outside [1, training size]");

  // Row-major copies keep each distance computation on contiguous memory.
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajor tr = train;
  const RowMajor te = test;
  const auto dims = static_cast<std::size_t>(train.cols());

  KnnResult result;
  result.predicted.assign(n_test, 0);
  KernelPlan rows = plan;
  rows.chunk = 64;
  parallel_for(rows, rows.chunks(n_test), [&](std::size_t c) {
    const std::size_t lo = c * rows.chunk;
    const std::size_t hi = std::min(n_test, lo + rows.chunk);
    std::vector<std::pair<double, std::size_t>> best;
    for (std::size_t t = lo; t < hi; ++t) {
      const double* q = te.data() + t * dims;
      best.clear();
      for (std::size_t r = 0; r < n_train; ++r) {
        const double* s = tr.data() + r * dims;
        double d = 0.0;
        for (std::size_t f = 0; f < dims; ++f) {
          const double diff = q[f] - s[f];
          d += diff * diff;
        }
        const std::pair<double, std::size_t> cand{d, r};
        if (best.size() < k) {
          best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
        } else if (cand < best.back()) {
          best.pop_back();
          best.insert(std::upper_bound(best.begin(), best.end(), cand), cand);
        }
      }
      if (k == 1) {
        result.predicted[t] = train_labels[best.front().second];
        continue;
      }
      std::map<int, std::size_t> votes;
      for (const auto& b : best) ++votes[train_labels[b.second]];
      std::size_t top = 0;
      for (const auto& [label, count] : votes) top = std::max(top, count);
      for (const auto& b : best) {
        if (votes[train_labels[b.second]] == top) {
          result.predicted[t] = train_labels[b.second];
          break;
        }
      }
    }
  });

  if (!test_labels.empty() && n_test > 0) {
    std::size_t hits = 0;
    for (std::size_t t = 0; t < n_test; ++t) hits += result.predicted[t] == test_labels[t];
    result.accuracy = static_cast<double>(hits) / static_cast<double>(n_test);
  } else {
    result.accuracy = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::vector<double> per_class_accuracy(const std::vector<int>& truth, const std::vector<int>& predicted,
                                       const std::vector<int>& classes) {
  if (truth.size() != predicted.size()) throw ArgumentError("per_class_accuracy: size mismatch");
  std::map<int, std::pair<std::size_t, std::size_t>> tally;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& [hit, total] = tally[truth[i]];
    hit += truth[i] == predicted[i];
    ++total;
  }
  std::vector<double> out;
  out.reserve(classes.size());
  for (int c : classes) {
    const auto it = tally.find(c);
    out.push_back(it == tally.end() ? std::numeric_limits<double>::quiet_NaN()
                                    : static_cast<double>(it->second.first) / static_cast<double>(it->second.second));
  }
  return out;
}

}  // namespace spca::bench
