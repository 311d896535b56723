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
#include <optional>
#include <string>
#include <vector>

#include "spca/bench/dataset.hpp"
#include "spca/bench/report.hpp"
#include "spca/core.hpp"

namespace spca::bench {

enum class Method { SL1, SL0, BL1, BL0, PCA };

std::string to_string(Method method);
/// "sl1", "sl0", "bl1", "bl0" or "pca". Throws ArgumentError otherwise.
Method parse_method(const std::string& name);

/// Solver settings for one SPCA method with m components.
SolverConfig solver_config(Method method, std::size_t m, const std::vector<double>& gamma,
                           const std::vector<double>& mu);

struct ExperimentConfig {
  std::string dataset_path;
  DatasetFormat format = DatasetFormat::CsvLabeled;
  Method method = Method::SL1;
  // Subspace dimensions to sweep.
  std::vector<std::size_t> dims{1};
  // Scalar, or per component (the first m entries are used).
  std::vector<double> gamma{0.0};
  std::vector<double> mu{1.0};
  double tol = 1e-6;
  int max_iter = 1000;
  SplitPolicy split;
  // Use the split already stored in the dataset instead of `split`.
  bool keep_split = false;
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  std::string output_path;
  std::size_t workers = 1;
  std::size_t chunk = 256;
  std::size_t k = 1;
  // Off: fit_seconds is written as 0 so the CSV is a pure function of the
  // configuration.
  bool record_timing = true;

  /// Throws ArgumentError.
  void validate() const;
};

struct RecognitionRecord {
  Method method = Method::SL1;
  std::size_t m = 0;
  std::vector<double> gamma;
  std::size_t repetition = 0;
  double overall_accuracy = 0.0;
  std::vector<double> class_accuracy;  // in `classes` order
  std::vector<std::size_t> nnz_per_component;
  double fit_seconds = 0.0;
  int iterations = 0;
  bool converged = true;
  std::string status = "ok";  // otherwise the error message
};

struct RecognitionResult {
  std::vector<int> classes;
  std::vector<RecognitionRecord> records;
  Table table;
};

/// Fits on the training rows of each repetition's split, projects train and
/// test, classifies test with k-NN and tabulates accuracy per dimension.
/// Repetition r draws its split and initialization from derive_seed(seed, r).
/// A solver failure is recorded in the status column and the sweep goes on.
/// Writes the CSV when output_path is set.
RecognitionResult run_recognition_experiment(const ExperimentConfig& config, const LabeledDataset& data);
RecognitionResult run_recognition_experiment(const ExperimentConfig& config);

/// Columns: method, m, gamma, repetition, overall_accuracy,
/// acc_class_<label>..., nnz_per_component, fit_seconds, iterations, status.
/// Rows with repetition "mean" average the successful repetitions.
Table recognition_table(const std::vector<int>& classes, const std::vector<RecognitionRecord>& records);

struct TimingConfig {
  // N values; P = N / 10 rows, so every N must be a multiple of 10.
  std::vector<std::size_t> sizes{500, 1000, 2000, 4000, 8000, 16000, 32000};
  std::vector<Method> variants{Method::SL1, Method::SL0, Method::BL1, Method::BL0};
  std::vector<double> gammas{0.01, 0.05};
  std::size_t instances = 20;
  std::size_t m = 5;
  std::vector<std::size_t> workers{1};
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int max_iter = 1000;
  std::size_t chunk = 256;
  // 0 asks the operating system.
  std::size_t memory_limit_bytes = 0;
  std::string output_path;

  void validate() const;
};

struct TimingRecord {
  Method variant = Method::SL1;
  std::size_t n = 0;
  std::size_t p = 0;
  double gamma = 0.0;
  std::size_t workers = 1;
  std::size_t instance = 0;
  double seconds = 0.0;
  int iterations = 0;
  std::string status = "ok";
};

/// Times every variant on `instances` Gaussian P x N matrices per size.
/// Instance i of size N is the same matrix for every variant, gamma and
/// worker count. A size that does not fit in memory yields rows with an
/// error status and the sweep continues. Writes the CSV when output_path is
/// set.
Table run_timing_experiment(const TimingConfig& config, std::vector<TimingRecord>* records = nullptr);

/// Columns: variant, N, P, gamma, workers, instance, seconds, iterations,
/// status. Rows with instance "median" summarize each cell.
Table timing_table(const std::vector<TimingRecord>& records);

}  // namespace spca::bench
