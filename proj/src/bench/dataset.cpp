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

#include "spca/bench/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "spca/csv.hpp"

namespace spca::bench {

namespace {

std::string where(const std::string& path, std::size_t line) { return path + ":" + std::to_string(line) + ": "; }

}  // namespace

std::vector<int> LabeledDataset::classes() const {
  std::vector<int> c(labels);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

Matrix LabeledDataset::rows(const std::vector<std::size_t>& indices) const {
  Matrix out(static_cast<Eigen::Index>(indices.size()), samples.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = samples.row(static_cast<Eigen::Index>(indices[r]));
  }
  return out;
}

std::vector<int> LabeledDataset::labels_of(const std::vector<std::size_t>& indices) const {
  std::vector<int> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(labels[i]);
  return out;
}

void LabeledDataset::validate_split() const {
  if (split.train.empty()) throw DataError("split has an empty training set");
  std::vector<char> seen(size(), 0);
  for (const auto* part : {&split.train, &split.test}) {
    for (std::size_t i : *part) {
      if (i >= size()) throw DataError("split index " + std::to_string(i) + " out of range");
      if (seen[i]) throw DataError("split index " + std::to_string(i) + " appears twice");
      seen[i] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw DataError("split does not cover every sample");
  }
  std::set<int> train_labels;
  for (std::size_t i : split.train) train_labels.insert(labels[i]);
  for (std::size_t i : split.test) {
    if (!train_labels.count(labels[i])) {
      throw DataError("test label " + std::to_string(labels[i]) + " never occurs in the training set");
    }
  }
}

LabeledDataset load_dataset(const std::string& path, DatasetFormat format) {
  if (format != DatasetFormat::CsvLabeled) throw ArgumentError("unsupported dataset format");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  LabeledDataset data;
  std::vector<double> values;
  bool has_group = false;
  std::size_t width = 0;  // feature count
  std::string raw;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = csv::clean_line(raw, line_no == 1);
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (first_content) {
      first_content = false;
      if (!csv::parse_integer(fields[0])) {
        has_group = fields.size() > 1 && fields[1] == "group";
        width = fields.size() - 1 - (has_group ? 1 : 0);
        continue;
      }
    }
    const std::size_t lead = has_group ? 2 : 1;
    if (fields.size() <= lead) throw DataError(where(path, line_no) + "row has no feature fields");
    const std::size_t row_width = fields.size() - lead;
    if (data.labels.empty() && width == 0) width = row_width;
    if (row_width != width) {
      throw DataError(where(path, line_no) + "expected " + std::to_string(width + lead) + " fields, found " +
                      std::to_string(fields.size()));
    }
    const auto label = csv::parse_integer(fields[0]);
    if (!label) throw DataError(where(path, line_no) + "label '" + std::string(fields[0]) + "' is not an integer");
    data.labels.push_back(static_cast<int>(*label));
    if (has_group) {
      const auto group = csv::parse_integer(fields[1]);
      if (!group) throw DataError(where(path, line_no) + "group '" + std::string(fields[1]) + "' is not an integer");
      data.groups.push_back(static_cast<int>(*group));
    }
    for (std::size_t f = lead; f < fields.size(); ++f) {
      const auto v = csv::parse_double(fields[f]);
      if (!v || !std::isfinite(*v)) {
        throw DataError(where(path, line_no) + "field " + std::to_string(f + 1) + " ('" + std::string(fields[f]) +
                        "') is not a finite number");
      }
      values.push_back(*v);
    }
  }
  if (data.labels.empty()) throw DataError(path + ": no samples");
  if (width == 0) throw DataError(path + ": no feature columns");

  const auto n = static_cast<Eigen::Index>(data.labels.size());
  data.samples.resize(n, static_cast<Eigen::Index>(width));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(width); ++c) {
      data.samples(r, c) = values[static_cast<std::size_t>(r) * width + static_cast<std::size_t>(c)];
    }
  }
  return data;
}

void save_dataset(const LabeledDataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  const bool grouped = !data.groups.empty();
  out << "label";
  if (grouped) out << ",group";
  for (Eigen::Index f = 0; f < data.samples.cols(); ++f) out << ",f" << (f + 1);
  out << '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    out << data.labels[r];
    if (grouped) out << ',' << data.groups[r];
    for (Eigen::Index f = 0; f < data.samples.cols(); ++f) {
      out << ',' << csv::format_double(data.samples(static_cast<Eigen::Index>(r), f));
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing " + path);
}

SplitPolicy SplitPolicy::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  SplitPolicy policy;
  auto count = [&](const char* what) {
    const auto v = csv::parse_integer(arg);
    if (!v || *v < 1) throw ArgumentError(std::string("split ") + what + " needs a positive count, got '" + arg + "'");
    return static_cast<std::size_t>(*v);
  };
  if (kind == "fixed") {
    policy.kind = Kind::Fixed;
    policy.train_count = count("fixed");
  } else if (kind == "per_class") {
    policy.kind = Kind::PerClassCount;
    policy.per_class = count("per_class");
  } else if (kind == "grouped") {
    policy.kind = Kind::Grouped;
    for (auto g : csv::split(arg, ';')) {
      const auto v = csv::parse_integer(g);
      if (!v) throw ArgumentError("split grouped needs integer group ids, got '" + arg + "'");
      policy.test_groups.push_back(static_cast<int>(*v));
    }
  } else {
    throw ArgumentError("unknown split policy '" + text + "' (fixed:<n>, per_class:<k>, grouped:<g;...>)");
  }
  return policy;
}

std::string SplitPolicy::to_string() const {
  switch (kind) {
    case Kind::Fixed:
      return "fixed:" + std::to_string(train_count);
    case Kind::PerClassCount:
      return "per_class:" + std::to_string(per_class);
    case Kind::Grouped: {
      std::string s = "grouped:";
      for (std::size_t i = 0; i < test_groups.size(); ++i) s += (i ? ";" : "") + std::to_string(test_groups[i]);
      return s;
    }
  }
  return "";
}

LabeledDataset make_splits(LabeledDataset dataset, const SplitPolicy& policy, std::uint64_t seed) {
  Split split;
  const std::size_t total = dataset.size();
  switch (policy.kind) {
    case SplitPolicy::Kind::Fixed:
      if (!policy.train_indices.empty() || !policy.test_indices.empty()) {
        split.train = policy.train_indices;
        split.test = policy.test_indices;
      } else {
        if (policy.train_count > total) {
          throw DataError("fixed split wants " + std::to_string(policy.train_count) + " training rows of " +
                          std::to_string(total));
        }
        for (std::size_t i = 0; i < total; ++i) (i < policy.train_count ? split.train : split.test).push_back(i);
      }
      break;
    case SplitPolicy::Kind::PerClassCount: {
      std::map<int, std::vector<std::size_t>> by_class;
      for (std::size_t i = 0; i < total; ++i) by_class[dataset.labels[i]].push_back(i);
      std::mt19937_64 rng(seed);
      for (auto& [label, members] : by_class) {
        if (members.size() < policy.per_class) {
          throw DataError("class " + std::to_string(label) + " has " + std::to_string(members.size()) +
                          " samples, fewer than the " + std::to_string(policy.per_class) + " requested");
        }
        std::shuffle(members.begin(), members.end(), rng);
        split.train.insert(split.train.end(), members.begin(),
                           members.begin() + static_cast<std::ptrdiff_t>(policy.per_class));
        split.test.insert(split.test.end(), members.begin() + static_cast<std::ptrdiff_t>(policy.per_class),
                          members.end());
      }
      std::sort(split.train.begin(), split.train.end());
      std::sort(split.test.begin(), split.test.end());
      break;
    }
    case SplitPolicy::Kind::Grouped: {
      if (dataset.groups.size() != total) throw DataError("grouped split needs a group column");
      if (policy.test_groups.empty()) throw DataError("grouped split needs at least one test group");
      for (std::size_t i = 0; i < total; ++i) {
        const bool held_out = std::find(policy.test_groups.begin(), policy.test_groups.end(), dataset.groups[i]) !=
                              policy.test_groups.end();
        (held_out ? split.test : split.train).push_back(i);
      }
      break;
    }
  }
  dataset.split = std::move(split);
  dataset.validate_split();
  return dataset;
}

}  // namespace spca::bench
