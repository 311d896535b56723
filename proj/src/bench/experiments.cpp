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

#include "spca/bench/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "spca/bench/knn.hpp"
#include "spca/bench/synthetic.hpp"
#include "spca/block.hpp"
#include "spca/csv.hpp"
#include "spca/parallel.hpp"
#include "spca/pca.hpp"

namespace spca::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> first_entries(const std::vector<double>& values, std::size_t m, const char* what) {
  if (values.size() == 1) return std::vector<double>(m, values.front());
  if (values.size() < m) {
    throw ArgumentError(std::string(what) + " lists " + std::to_string(values.size()) + " values, m = " +
                        std::to_string(m) + " needs one or at least m");
  }
  return {values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m)};
}

std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ";" : "") + csv::format_double(values[i]);
  return s;
}

std::string join(const std::vector<std::size_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ";" : "") + std::to_string(values[i]);
  return s;
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++count;
  }
  return count ? sum / static_cast<double>(count) : kNaN;
}

double median_of(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

std::size_t nonzeros(const Vector& v) {
  return static_cast<std::size_t>((v.array() != 0.0).count());
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::SL1:
      return "sl1";
    case Method::SL0:
      return "sl0";
    case Method::BL1:
      return "bl1";
    case Method::BL0:
      return "bl0";
    case Method::PCA:
      return "pca";
  }
  return "";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::SL1, Method::SL0, Method::BL1, Method::BL0, Method::PCA}) {
    if (name == to_string(m)) return m;
  }
  throw ArgumentError("unknown variant '" + name + "' (sl1, sl0, bl1, bl0, pca)");
}

SolverConfig solver_config(Method method, std::size_t m, const std::vector<double>& gamma,
                           const std::vector<double>& mu) {
  if (method == Method::PCA) throw ArgumentError("pca has no solver configuration");
  SolverConfig config;
  config.penalty = (method == Method::SL1 || method == Method::BL1) ? Penalty::L1 : Penalty::L0;
  config.mode = (method == Method::BL1 || method == Method::BL0) ? Mode::Block : Mode::SingleUnit;
  config.m = m;
  config.gamma = gamma;
  config.mu = config.mode == Mode::Block ? mu : std::vector<double>{1.0};
  return config;
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw ArgumentError("repetitions must be >= 1");
  if (dims.empty()) throw ArgumentError("at least one subspace dimension m is required");
  for (std::size_t m : dims) {
    if (m < 1) throw ArgumentError("subspace dimension m must be >= 1");
  }
  if (gamma.empty() || mu.empty()) throw ArgumentError("gamma and mu need at least one value");
  for (double g : gamma) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ArgumentError("gamma must be finite and >= 0");
  }
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (workers < 1 || chunk < 1) throw ArgumentError("workers and chunk must be >= 1");
  if (!(tol > 0.0) || max_iter < 1) throw ArgumentError("tol must be > 0 and max_iter >= 1");
}

Table recognition_table(const std::vector<int>& classes, const std::vector<RecognitionRecord>& records) {
  Table table;
  table.header = {"method", "m", "gamma", "repetition", "overall_accuracy"};
  for (int c : classes) table.header.push_back("acc_class_" + std::to_string(c));
  for (const char* h : {"nnz_per_component", "fit_seconds", "iterations", "status"}) table.header.emplace_back(h);

  std::vector<const RecognitionRecord*> order;
  for (const auto& r : records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return std::tie(a->m, a->repetition) < std::tie(b->m, b->repetition);
  });

  std::map<std::size_t, std::vector<const RecognitionRecord*>> by_m;
  for (const auto* r : order) {
    std::vector<Cell> row{to_string(r->method), static_cast<long long>(r->m), join(r->gamma),
                          static_cast<long long>(r->repetition), r->overall_accuracy};
    for (std::size_t c = 0; c < classes.size(); ++c) {
      row.emplace_back(c < r->class_accuracy.size() ? r->class_accuracy[c] : kNaN);
    }
    row.emplace_back(join(r->nnz_per_component));
    row.emplace_back(r->fit_seconds);
    row.emplace_back(static_cast<long long>(r->iterations));
    row.emplace_back(r->status);
    table.rows.push_back(std::move(row));
    if (r->status == "ok") by_m[r->m].push_back(r);
  }

  for (const auto& [m, group] : by_m) {
    const RecognitionRecord& first = *group.front();
    std::vector<double> overall;
    std::vector<double> fit;
    std::vector<double> iterations;
    for (const auto* r : group) {
      overall.push_back(r->overall_accuracy);
      fit.push_back(r->fit_seconds);
      iterations.push_back(r->iterations);
    }
    std::vector<Cell> row{to_string(first.method), static_cast<long long>(m), join(first.gamma), std::string("mean"),
                          mean_of(overall)};
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::vector<double> acc;
      for (const auto* r : group) acc.push_back(c < r->class_accuracy.size() ? r->class_accuracy[c] : kNaN);
      row.emplace_back(mean_of(acc));
    }
    std::vector<double> nnz(m, 0.0);
    for (const auto* r : group) {
      for (std::size_t j = 0; j < m && j < r->nnz_per_component.size(); ++j) {
        nnz[j] += static_cast<double>(r->nnz_per_component[j]) / static_cast<double>(group.size());
      }
    }
    row.emplace_back(join(nnz));
    row.emplace_back(mean_of(fit));
    row.emplace_back(mean_of(iterations));
    row.emplace_back(std::string("ok"));
    table.rows.push_back(std::move(row));
  }
  return table;
}

RecognitionResult run_recognition_experiment(const ExperimentConfig& config, const LabeledDataset& data) {
  config.validate();
  RecognitionResult result;
  result.classes = data.classes();
  const KernelPlan plan{config.workers, config.chunk};

  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const std::uint64_t rep_seed = derive_seed(config.seed, {rep});
    LabeledDataset split_data;
    const LabeledDataset* current = &data;
    if (config.keep_split) {
      data.validate_split();
    } else {
      split_data = make_splits(data, config.split, rep_seed);
      current = &split_data;
    }
    const Matrix train = current->rows(current->split.train);
    const Matrix test = current->rows(current->split.test);
    const std::vector<int> train_labels = current->labels_of(current->split.train);
    const std::vector<int> test_labels = current->labels_of(current->split.test);
    const Vector mean = train.colwise().mean().transpose();
    std::optional<DataMatrix> centered;

    for (std::size_t m : config.dims) {
      RecognitionRecord record;
      record.method = config.method;
      record.m = m;
      record.repetition = rep;
      try {
        Matrix loadings;
        const auto started = Clock::now();
        if (config.method == Method::PCA) {
          loadings = pca_fit(train, m).components;
          record.fit_seconds = seconds_since(started);
          for (Eigen::Index j = 0; j < loadings.cols(); ++j) record.nnz_per_component.push_back(nonzeros(loadings.col(j)));
        } else {
          record.gamma = first_entries(config.gamma, m, "gamma");
          SolverConfig solver = solver_config(config.method, m, record.gamma, first_entries(config.mu, m, "mu"));
          solver.tol = config.tol;
          solver.max_iter = config.max_iter;
          solver.seed = rep_seed;
          solver.workers = config.workers;
          solver.chunk = config.chunk;
          if (!centered) centered.emplace(Matrix(train.rowwise() - mean.transpose()));
          SolveResult fit = solve(*centered, solver);
          record.fit_seconds = seconds_since(started);
          loadings = fit.loadings.values();
          record.nnz_per_component = fit.loadings.nnz_per_component();
          record.iterations = fit.report.iterations;
          record.converged = fit.report.converged;
        }
        if (!config.record_timing) record.fit_seconds = 0.0;
        const Matrix train_embedding = project(train, loadings, mean);
        const Matrix test_embedding = project(test, loadings, mean);
        const KnnResult knn =
            knn_classify(train_embedding, train_labels, test_embedding, test_labels, config.k, plan);
        record.overall_accuracy = knn.accuracy;
        record.class_accuracy = per_class_accuracy(test_labels, knn.predicted, result.classes);
      } catch (const Error& e) {
        record.overall_accuracy = kNaN;
        record.class_accuracy.assign(result.classes.size(), kNaN);
        record.status = std::string("error: ") + e.what();
        for (char& ch : record.status) {
          if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
        }
      }
      result.records.push_back(std::move(record));
    }
  }

  result.table = recognition_table(result.classes, result.records);
  if (!config.output_path.empty()) emit_report(result.table, config.output_path);
  return result;
}

RecognitionResult run_recognition_experiment(const ExperimentConfig& config) {
  return run_recognition_experiment(config, load_dataset(config.dataset_path, config.format));
}

void TimingConfig::validate() const {
  if (sizes.empty() || variants.empty() || gammas.empty() || workers.empty()) {
    throw ArgumentError("timing sweep needs sizes, variants, gammas and worker counts");
  }
  for (std::size_t n : sizes) {
    if (n < 10 || n % 10 != 0) throw ArgumentError("timing size N = " + std::to_string(n) + " must be a multiple of 10");
  }
  for (Method v : variants) {
    if (v == Method::PCA) throw ArgumentError("timing sweeps cover the four SPCA variants only");
  }
  for (double g : gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ArgumentError("gamma must be finite and >= 0");
  }
  for (std::size_t w : workers) {
    if (w < 1) throw ArgumentError("worker counts must be >= 1");
  }
  if (instances < 1 || m < 1) throw ArgumentError("instances and m must be >= 1");
  if (!(tol > 0.0) || max_iter < 1 || chunk < 1) throw ArgumentError("tol, max_iter and chunk must be positive");
}

Table timing_table(const std::vector<TimingRecord>& records) {
  Table table;
  table.header = {"variant", "N", "P", "gamma", "workers", "instance", "seconds", "iterations", "status"};
  auto key = [](const TimingRecord& r) { return std::make_tuple(static_cast<int>(r.variant), r.n, r.gamma, r.workers); };

  std::vector<const TimingRecord*> order;
  for (const auto& r : records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [&](const auto* a, const auto* b) {
    return std::tuple_cat(key(*a), std::make_tuple(a->instance)) < std::tuple_cat(key(*b), std::make_tuple(b->instance));
  });

  std::map<decltype(key(records.front())), std::vector<const TimingRecord*>> cells;
  for (const auto* r : order) {
    table.rows.push_back({to_string(r->variant), static_cast<long long>(r->n), static_cast<long long>(r->p), r->gamma,
                          static_cast<long long>(r->workers), static_cast<long long>(r->instance), r->seconds,
                          static_cast<long long>(r->iterations), r->status});
    if (r->status == "ok") cells[key(*r)].push_back(r);
  }
  for (const auto& [k, group] : cells) {
    std::vector<double> seconds;
    std::vector<double> iterations;
    for (const auto* r : group) {
      seconds.push_back(r->seconds);
      iterations.push_back(r->iterations);
    }
    const TimingRecord& first = *group.front();
    table.rows.push_back({to_string(first.variant), static_cast<long long>(first.n), static_cast<long long>(first.p),
                          first.gamma, static_cast<long long>(first.workers), std::string("median"),
                          median_of(seconds), median_of(iterations), std::string("ok")});
  }
  return table;
}

Table run_timing_experiment(const TimingConfig& config, std::vector<TimingRecord>* records_out) {
  config.validate();
  const std::size_t limit = config.memory_limit_bytes ? config.memory_limit_bytes : default_memory_limit();
  std::vector<TimingRecord> records;

  for (std::size_t n : config.sizes) {
    const std::size_t p = n / 10;
    std::string failure;
    try {
      check_allocation(p, n, limit);
      if (config.m > std::min(p, n)) {
        throw ArgumentError("m = " + std::to_string(config.m) + " exceeds min(P, N) = " + std::to_string(std::min(p, n)));
      }
    } catch (const Error& e) {
      failure = std::string("error: ") + e.what();
    }

    for (std::size_t inst = 0; inst < config.instances; ++inst) {
      std::optional<DataMatrix> a;
      if (failure.empty()) {
        try {
          a.emplace(gaussian_matrix(p, n, derive_seed(config.seed, {n, inst})));
        } catch (const std::bad_alloc&) {
          failure = "error: allocation failed";
        }
      }
      for (Method variant : config.variants) {
        for (double gamma : config.gammas) {
          for (std::size_t workers : config.workers) {
            TimingRecord record{variant, n, p, gamma, workers, inst};
            if (!failure.empty()) {
              record.seconds = kNaN;
              record.status = failure;
              records.push_back(std::move(record));
              continue;
            }
            SolverConfig solver = solver_config(variant, config.m, {gamma}, {1.0});
            solver.tol = config.tol;
            solver.max_iter = config.max_iter;
            solver.seed = derive_seed(config.seed, {n, inst, 1});
            solver.workers = workers;
            solver.chunk = config.chunk;
            try {
              const auto started = Clock::now();
              const SolveResult fit = solve(*a, solver);
              record.seconds = seconds_since(started);
              record.iterations = fit.report.iterations;
            } catch (const Error& e) {
              record.seconds = kNaN;
              record.status = std::string("error: ") + e.what();
            }
            records.push_back(std::move(record));
          }
        }
      }
    }
  }

  for (auto& r : records) {
    for (char& ch : r.status) {
      if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
    }
  }
  Table table = timing_table(records);
  if (!config.output_path.empty()) emit_report(table, config.output_path);
  if (records_out) *records_out = std::move(records);
  return table;
}

}  // namespace spca::bench
