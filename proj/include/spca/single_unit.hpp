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

// Single-unit sparse PCA by the generalized power method.
//
// For a p x n data matrix A with columns a_i the solvers maximize a convex
// function of a unit vector x in R^p:
//
//   L1:  f(x) = sum_i [ |a_i^T x| - gamma ]_+^2
//   L0:  f(x) = sum_i [ (a_i^T x)^2 - gamma ]_+
//
// by iterating x <- grad f(x) / ||grad f(x)||. Each step maximizes the
// linearization of f over the sphere, so f never decreases. The sparse
// loading vector z in R^n is then read off the final x:
//
//   L1:  z_i ~ sign(a_i^T x) [ |a_i^T x| - gamma ]_+
//   L0:  z_i ~ a_i^T x   if (a_i^T x)^2 > gamma, else 0
//
// normalized to unit length unless every entry is zero.

#pragma once

#include "spca/core.hpp"
#include "spca/parallel.hpp"

namespace spca {

struct SingleUnitState {
  Vector x;
  double objective = 0.0;
  int iteration = 0;
};

/// Output shared by all solvers. `x` holds the final sphere / Stiefel
/// iterate(s), one column per component.
struct SolveResult {
  SparseLoadings loadings;
  Matrix x;
  RunReport report;
};

double objective_sl1(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan = {});
double objective_sl0(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan = {});

/// 2 sum_i [|a_i^T x| - gamma]_+ sign(a_i^T x) a_i
Vector ascent_direction_sl1(const DataMatrix& a, const Vector& x, double gamma,
                            const KernelPlan& plan = {});
/// 2 sum_{(a_i^T x)^2 > gamma} (a_i^T x) a_i
Vector ascent_direction_sl0(const DataMatrix& a, const Vector& x, double gamma,
                            const KernelPlan& plan = {});

struct StepOutcome {
  SingleUnitState state;
  bool fixed_point = false;
};

/// x+ = g / ||g||. A zero direction returns the state unchanged with
/// fixed_point set. The objective is carried over, not re-evaluated.
StepOutcome power_step(const SingleUnitState& state, const Vector& direction);

/// Sparse loading column for fixed x; support {i : |a_i^T x| > gamma}.
SparseLoadings recover_pattern_sl1(const DataMatrix& a, const Vector& x, double gamma,
                                   const KernelPlan& plan = {});
/// Sparse loading column for fixed x; support {i : (a_i^T x)^2 > gamma}.
SparseLoadings recover_pattern_sl0(const DataMatrix& a, const Vector& x, double gamma,
                                   const KernelPlan& plan = {});

/// One penalized single-unit problem bound to its data.
class SingleUnitProblem {
 public:
  SingleUnitProblem(const DataMatrix& a, Penalty penalty, double gamma, KernelPlan plan = {});

  double objective(const Vector& x) const;
  Vector ascent_direction(const Vector& x) const;
  SparseLoadings recover(const Vector& x) const;

  /// True when no unit x can activate any column, so f is identically 0.
  bool trivially_zero() const;

  const DataMatrix& data() const { return a_; }

 private:
  Vector correlations(const Vector& x) const;

  const DataMatrix& a_;
  ThresholdRule rule_;
  KernelPlan plan_;
};

/// Single component. Requires config.mode = SingleUnit and config.m = 1.
SolveResult solve_single_unit(const DataMatrix& a, const SolverConfig& config);

/// (I - x x^T) A.
DataMatrix deflate(const DataMatrix& a, const Vector& x);

/// config.m components by repeated solve_single_unit + deflate. Component j
/// uses gamma[j]. Once a component comes back zero every later one is zero.
SolveResult solve_multi_sequential(const DataMatrix& a, const SolverConfig& config);

/// Initial sphere point for the single-unit loop.
Vector initial_sphere_point(const DataMatrix& a, const SolverConfig& config, std::size_t component = 0);

}  // namespace spca
