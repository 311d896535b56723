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
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "spca/parallel.hpp"

namespace spca {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Keeps the optimizer from discarding a kernel result.
volatile double sink = 0.0;

}  // namespace

std::string to_string(KernelId id) {
  switch (id) {
    case KernelId::MatvecT:
      return "matvec_t";
    case KernelId::ThresholdAccumulate:
      return "threshold_accumulate";
    case KernelId::GramApply:
      return "gram_apply";
  }
  return "unknown";
}

KernelId parse_kernel_id(const std::string& name) {
  for (KernelId id : {KernelId::MatvecT, KernelId::ThresholdAccumulate, KernelId::GramApply}) {
    if (to_string(id) == name) return id;
  }
  throw ArgumentError("unknown kernel '" + name + "'");
}

std::size_t default_memory_limit() {
  std::ifstream meminfo("/proc/meminfo");
  std::string line;
  while (std::getline(meminfo, line)) {
    if (line.rfind("MemAvailable:", 0) == 0) {
      std::istringstream fields(line.substr(13));
      std::size_t kib = 0;
      if (fields >> kib) return kib * 1024 / 2;
    }
  }
  return std::size_t{4} << 30;
}

void check_allocation(std::size_t p, std::size_t n, std::size_t limit) {
  const long double bytes = static_cast<long double>(p) * n * sizeof(double);
  if (bytes > static_cast<long double>(limit)) {
    throw DataError("a " + std::to_string(p) + " x " + std::to_string(n) + " matrix needs " +
                    std::to_string(static_cast<unsigned long long>(bytes)) +
                    " bytes, over the limit of " + std::to_string(limit));
  }
}

std::vector<ScalingRow> measure_scaling(KernelId kernel, std::vector<ProblemSize> sizes,
                                        std::vector<std::size_t> workers,
                                        const ScalingOptions& options) {
  if (sizes.empty()) throw ArgumentError("measure_scaling needs at least one size");
  if (options.instances < 1 || options.repeats < 1) {
    throw ArgumentError("measure_scaling needs instances >= 1 and repeats >= 1");
  }
  workers.push_back(1);
  std::sort(workers.begin(), workers.end());
  workers.erase(std::unique(workers.begin(), workers.end()), workers.end());
  if (workers.front() < 1) throw ArgumentError("worker counts must be >= 1");

  std::sort(sizes.begin(), sizes.end(), [](const ProblemSize& l, const ProblemSize& r) {
    return l.n != r.n ? l.n < r.n : l.p < r.p;
  });
  const std::size_t limit = options.memory_limit_bytes ? options.memory_limit_bytes : default_memory_limit();
  for (const auto& s : sizes) {
    if (s.p < 1 || s.n < 1) throw ArgumentError("problem sizes must be positive");
    check_allocation(s.p, s.n, limit);
  }

  std::vector<ScalingRow> rows;
  for (const auto& size : sizes) {
    std::vector<std::vector<double>> times(workers.size());
    for (std::size_t inst = 0; inst < options.instances; ++inst) {
      std::mt19937_64 rng(options.seed ^ (size.n * 0x9E3779B97F4A7C15ULL) ^ (inst + 1));
      std::normal_distribution<double> gauss;
      Matrix values(static_cast<Eigen::Index>(size.p), static_cast<Eigen::Index>(size.n));
      for (Eigen::Index i = 0; i < values.size(); ++i) values.data()[i] = gauss(rng);
      const DataMatrix a(std::move(values));
      Vector x(static_cast<Eigen::Index>(size.p));
      for (auto& v : x) v = gauss(rng);
      x.normalize();
      Vector z(static_cast<Eigen::Index>(size.n));
      for (auto& v : z) v = gauss(rng);
      const ThresholdRule rule{Penalty::L1, 0.05, 1.0};

      for (std::size_t w = 0; w < workers.size(); ++w) {
        const KernelPlan plan{workers[w], options.chunk};
        const Vector corr = par_matvec_t(a, {x.data(), size.p}, plan);
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t r = 0; r < options.repeats; ++r) {
          switch (kernel) {
            case KernelId::MatvecT:
              sink = par_matvec_t(a, {x.data(), size.p}, plan)[0];
              break;
            case KernelId::ThresholdAccumulate:
              sink = par_threshold_accumulate(a, {corr.data(), size.n}, rule, plan)[0];
              break;
            case KernelId::GramApply:
              sink = par_gram_apply(a, {z.data(), size.n}, plan)[0];
              break;
          }
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        times[w].push_back(elapsed.count() / static_cast<double>(options.repeats));
      }
    }
    const double baseline = median(times[0]);
    for (std::size_t w = 0; w < workers.size(); ++w) {
      ScalingRow row{kernel, size.n, size.p, workers[w], options.instances, median(times[w]), 1.0};
      row.speedup = w == 0 ? 1.0 : baseline / row.median_seconds;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace spca
