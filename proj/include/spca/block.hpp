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

// Block sparse PCA: m components at once over the Stiefel manifold.
//
//   L1:  f(X) = sum_j sum_i [ mu_j |a_i^T x_j| - gamma_j ]_+^2
//   L0:  f(X) = sum_j sum_i [ (mu_j a_i^T x_j)^2 - gamma_j ]_+
//
// Iteration: G = grad f(X), X <- polar factor of G (U V^T from the thin SVD
// G = U S V^T), which maximizes Tr(X^T G) over orthonormal X.

#pragma once

#include <vector>

#include "spca/core.hpp"
#include "spca/parallel.hpp"
#include "spca/single_unit.hpp"

namespace spca {

struct BlockState {
  StiefelPoint x;
  double objective = 0.0;
  int iteration = 0;
};

double objective_bl1(const DataMatrix& a, const StiefelPoint& x, const std::vector<double>& gamma,
                     const std::vector<double>& mu, const KernelPlan& plan = {});
double objective_bl0(const DataMatrix& a, const StiefelPoint& x, const std::vector<double>& gamma,
                     const std::vector<double>& mu, const KernelPlan& plan = {});

/// p x m gradient of the block objective; column j only depends on x_j.
Matrix ascent_direction_block(const DataMatrix& a, const StiefelPoint& x,
                              const std::vector<double>& gamma, const std::vector<double>& mu,
                              Penalty penalty, const KernelPlan& plan = {});

/// Polar factor U V^T of g. Throws SolverError carrying the numerical rank
/// when g does not have full column rank.
StiefelPoint polar_projection(const Matrix& g);

class BlockProblem {
 public:
  BlockProblem(const DataMatrix& a, Penalty penalty, std::vector<double> gamma,
               std::vector<double> mu, KernelPlan plan = {});

  double objective(const StiefelPoint& x) const;
  Matrix ascent_direction(const StiefelPoint& x) const;
  SparseLoadings recover(const StiefelPoint& x) const;

 private:
  Vector correlations(const StiefelPoint& x, std::size_t j) const;

  const DataMatrix& a_;
  std::vector<ThresholdRule> rules_;
  KernelPlan plan_;
};

/// Initial Stiefel point for the block loop.
StiefelPoint initial_stiefel_point(const DataMatrix& a, const SolverConfig& config);

/// Requires config.mode = Block and 1 <= m <= min(p, n).
SolveResult solve_block(const DataMatrix& a, const SolverConfig& config);

/// Dispatches on config.mode: sequential deflation or block.
SolveResult solve(const DataMatrix& a, const SolverConfig& config);

}  // namespace spca
