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
#include <string>
#include <vector>

#include "spca/core.hpp"

namespace spca::bench {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Samples as rows, one integer label per sample, optional integer group per
/// sample (speaker set, session, ...).
struct LabeledDataset {
  Matrix samples;
  std::vector<int> labels;
  std::vector<int> groups;  // empty when the file has no group column
  Split split;

  std::size_t size() const { return labels.size(); }
  std::size_t features() const { return static_cast<std::size_t>(samples.cols()); }

  /// Sorted distinct labels.
  std::vector<int> classes() const;

  /// Rows of `samples` listed in `indices`, in that order.
  Matrix rows(const std::vector<std::size_t>& indices) const;
  std::vector<int> labels_of(const std::vector<std::size_t>& indices) const;

  /// Throws DataError unless train and test are disjoint, together cover
  /// every sample, train is nonempty, and every test label occurs in train.
  void validate_split() const;
};

enum class DatasetFormat { CsvLabeled };

/// Labeled CSV: `label,[group,]f1,f2,...`, comma-separated, optional header
/// row. A header whose second field is named "group" marks the group
/// column. Throws DataError naming the line for ragged rows and non-numeric
/// fields.
LabeledDataset load_dataset(const std::string& path, DatasetFormat format = DatasetFormat::CsvLabeled);

/// Writes the labeled CSV format read by load_dataset.
void save_dataset(const LabeledDataset& data, const std::string& path);

struct SplitPolicy {
  enum class Kind { Fixed, PerClassCount, Grouped };
  Kind kind = Kind::Fixed;
  // Fixed: explicit indices win; otherwise the first `train_count` rows
  // train and the rest test.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::size_t train_count = 0;
  // PerClassCount: this many random training samples per class.
  std::size_t per_class = 0;
  // Grouped: rows whose group is listed here are the test set.
  std::vector<int> test_groups;

  /// "fixed:<train_count>", "per_class:<k>" or "grouped:<g>[;<g>...]".
  static SplitPolicy parse(const std::string& text);
  std::string to_string() const;
};

/// Assigns dataset.split. Deterministic for a given seed; only
/// PerClassCount uses it. Throws DataError for an infeasible policy.
LabeledDataset make_splits(LabeledDataset dataset, const SplitPolicy& policy, std::uint64_t seed);

}  // namespace spca::bench
