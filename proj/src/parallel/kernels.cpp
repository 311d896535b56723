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

#include <algorithm>
#include <map>
#include <memory>

#include "spca/parallel.hpp"
#include "spca/simd.hpp"

namespace spca {

namespace {

thread_local const WorkerPool* current_pool = nullptr;

void check_plan(const KernelPlan& plan) {
  if (plan.workers < 1 || plan.chunk < 1) throw ArgumentError("kernel plan needs workers >= 1 and chunk >= 1");
}

void merge(Matrix& partials, Eigen::Index lo, Eigen::Index hi, const simd::KernelTable& k) {
  if (hi - lo <= 1) return;
  const Eigen::Index mid = lo + (hi - lo) / 2;
  merge(partials, lo, mid, k);
  merge(partials, mid, hi, k);
  k.add(partials.col(mid).data(), partials.col(lo).data(), static_cast<std::size_t>(partials.rows()));
}

}  // namespace

WorkerPool::WorkerPool(std::size_t workers) {
  if (workers < 1) throw ArgumentError("worker pool needs at least one worker");
  threads_.reserve(workers - 1);
  for (std::size_t i = 0; i + 1 < workers; ++i) threads_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::drain() {
  const WorkerPool* outer = current_pool;
  current_pool = this;
  while (true) {
    std::size_t index;
    const std::function<void(std::size_t)>* task;
    {
      std::lock_guard lock(mutex_);
      if (next_ >= count_) break;
      index = next_++;
      task = task_;
    }
    try {
      (*task)(index);
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
    std::lock_guard lock(mutex_);
    if (++finished_ == count_) done_.notify_all();
  }
  current_pool = outer;
}

void WorkerPool::worker_loop() {
  std::uint64_t seen = 0;
  while (true) {
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    drain();
  }
}

void WorkerPool::run(std::size_t count, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  if (current_pool == this || threads_.empty() || count == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::lock_guard submit(submit_);
  {
    std::lock_guard lock(mutex_);
    task_ = &task;
    count_ = count;
    next_ = 0;
    finished_ = 0;
    error_ = nullptr;
    ++generation_;
  }
  wake_.notify_all();
  drain();
  std::exception_ptr error;
  {
    std::unique_lock lock(mutex_);
    done_.wait(lock, [&] { return finished_ == count_; });
    error = error_;
    task_ = nullptr;
    count_ = 0;
  }
  if (error) std::rethrow_exception(error);
}

WorkerPool& shared_pool(std::size_t workers) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<WorkerPool>> pools;
  std::lock_guard lock(mutex);
  auto& slot = pools[workers];
  if (!slot) slot = std::make_unique<WorkerPool>(workers);
  return *slot;
}

void parallel_for(const KernelPlan& plan, std::size_t count,
                  const std::function<void(std::size_t)>& task) {
  if (plan.workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  shared_pool(plan.workers).run(count, task);
}

void pairwise_tree_reduce(Matrix& partials) {
  merge(partials, 0, partials.cols(), simd::active());
}

Vector par_matvec_t(const DataMatrix& a, std::span<const double> x, const KernelPlan& plan) {
  check_plan(plan);
  const std::size_t p = a.rows();
  const std::size_t n = a.cols();
  if (x.size() != p) {
    throw ArgumentError("par_matvec_t: x has length " + std::to_string(x.size()) + ", expected " +
                        std::to_string(p));
  }
  const auto& k = simd::active();
  Vector out(static_cast<Eigen::Index>(n));
  parallel_for(plan, plan.chunks(n), [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * plan.chunk);
    for (std::size_t i = c * plan.chunk; i < end; ++i) {
      out[static_cast<Eigen::Index>(i)] = k.dot(a.column(i).data(), x.data(), p);
    }
  });
  return out;
}

Vector par_combine_columns(const DataMatrix& a, std::span<const double> weights,
                           const KernelPlan& plan) {
  check_plan(plan);
  const std::size_t p = a.rows();
  const std::size_t n = a.cols();
  if (weights.size() != n) {
    throw ArgumentError("par_combine_columns: " + std::to_string(weights.size()) +
                        " weights for " + std::to_string(n) + " columns");
  }
  const auto& k = simd::active();
  const std::size_t chunks = plan.chunks(n);
  Matrix partials = Matrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(chunks));
  parallel_for(plan, chunks, [&](std::size_t c) {
    double* acc = partials.col(static_cast<Eigen::Index>(c)).data();
    const std::size_t end = std::min(n, (c + 1) * plan.chunk);
    for (std::size_t i = c * plan.chunk; i < end; ++i) {
      if (weights[i] != 0.0) k.axpy(weights[i], a.column(i).data(), acc, p);
    }
  });
  merge(partials, 0, partials.cols(), k);
  return partials.col(0);
}

Vector par_threshold_accumulate(const DataMatrix& a, std::span<const double> correlations,
                                const ThresholdRule& rule, const KernelPlan& plan) {
  if (correlations.size() != a.cols()) {
    throw ArgumentError("par_threshold_accumulate: correlation count does not match column count");
  }
  std::vector<double> weights(correlations.size());
  std::transform(correlations.begin(), correlations.end(), weights.begin(),
                 [&](double c) { return rule.weight(c); });
  return par_combine_columns(a, weights, plan);
}

Vector par_gram_apply(const DataMatrix& a, std::span<const double> z, const KernelPlan& plan) {
  const Vector az = par_combine_columns(a, z, plan);
  return par_matvec_t(a, {az.data(), static_cast<std::size_t>(az.size())}, plan);
}

}  // namespace spca
