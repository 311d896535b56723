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

// Data-parallel column kernels shared by every solver.
//
// Columns are cut into fixed chunks of `chunk` consecutive columns. A chunk
// is the unit of work handed to a worker and the leaf of the reduction tree.
// Per-chunk partial vectors are merged by a pairwise tree whose shape depends
// only on the number of chunks, so for a fixed chunk size every kernel
// returns bitwise identical results for any worker count.

#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "spca/core.hpp"

namespace spca {

enum class Reduction { PairwiseTree };

struct KernelPlan {
  std::size_t workers = 1;
  std::size_t chunk = 256;
  Reduction reduction = Reduction::PairwiseTree;

  static KernelPlan from(const SolverConfig& config) { return {config.workers, config.chunk}; }
  std::size_t chunks(std::size_t n) const { return (n + chunk - 1) / chunk; }
};

/// Fixed set of threads executing indexed task batches. The calling thread
/// takes part in every batch. Batches submitted from inside a task of the
/// same pool run inline.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t workers() const { return threads_.size() + 1; }

  /// Calls task(0) ... task(count - 1), each exactly once, and blocks until
  /// all have returned. The first exception thrown by a task is rethrown.
  void run(std::size_t count, const std::function<void(std::size_t)>& task);

 private:
  void worker_loop();
  void drain();

  std::vector<std::thread> threads_;
  std::mutex submit_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t count_ = 0;
  std::size_t next_ = 0;
  std::size_t finished_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

/// Process-wide pool with `workers` threads in total, created on first use.
WorkerPool& shared_pool(std::size_t workers);

/// Runs task(0..count-1) with plan.workers threads (inline when 1).
void parallel_for(const KernelPlan& plan, std::size_t count,
                  const std::function<void(std::size_t)>& task);

/// Entry i is a_i^T x.
Vector par_matvec_t(const DataMatrix& a, std::span<const double> x, const KernelPlan& plan);

/// sum_i weights[i] * a_i, reduced chunk by chunk with the pairwise tree.
/// Zero weights are skipped.
Vector par_combine_columns(const DataMatrix& a, std::span<const double> weights,
                           const KernelPlan& plan);

/// sum_i rule.weight(c_i) * a_i for correlations c = A^T x.
Vector par_threshold_accumulate(const DataMatrix& a, std::span<const double> correlations,
                                const ThresholdRule& rule, const KernelPlan& plan);

/// A^T (A z), i.e. the Gram matrix applied to z without forming it.
Vector par_gram_apply(const DataMatrix& a, std::span<const double> z, const KernelPlan& plan);

/// In-place pairwise tree over the columns of `partials`; the sum ends up in
/// column 0. merge(lo, hi) = merge(lo, mid) + merge(mid, hi) with
/// mid = lo + (hi - lo) / 2.
void pairwise_tree_reduce(Matrix& partials);

// Scaling harness.

enum class KernelId { MatvecT, ThresholdAccumulate, GramApply };

std::string to_string(KernelId id);
KernelId parse_kernel_id(const std::string& name);

struct ProblemSize {
  std::size_t p = 0;
  std::size_t n = 0;
};

struct ScalingOptions {
  std::size_t instances = 20;
  std::size_t chunk = 256;
  std::uint64_t seed = 1;
  // Calls per instance; their mean is the instance time.
  std::size_t repeats = 3;
  // 0 means "ask the operating system".
  std::size_t memory_limit_bytes = 0;
};

struct ScalingRow {
  KernelId kernel;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t workers = 1;
  std::size_t instances = 0;
  double median_seconds = 0.0;
  // median at workers = 1 divided by median at this worker count.
  double speedup = 1.0;
};

/// Times `kernel` on random Gaussian instances of every size for every worker
/// count (1 is always added as the baseline). Rows are sorted by (n, p,
/// workers). Throws DataError before allocating a size that cannot fit.
std::vector<ScalingRow> measure_scaling(KernelId kernel, std::vector<ProblemSize> sizes,
                                        std::vector<std::size_t> workers,
                                        const ScalingOptions& options = {});

/// Bytes the process may reasonably allocate: half of MemAvailable, or 4 GiB
/// when the operating system does not say.
std::size_t default_memory_limit();

/// Throws DataError if a p x n double matrix exceeds `limit` bytes.
void check_allocation(std::size_t p, std::size_t n, std::size_t limit);

}  // namespace spca
