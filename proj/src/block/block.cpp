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

#include "spca/block.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/SVD>

namespace spca {

namespace {

std::span<const double> column_span(const Matrix& m, Eigen::Index j) {
  return {m.col(j).data(), static_cast<std::size_t>(m.rows())};
}

std::vector<ThresholdRule> make_rules(Penalty penalty, const std::vector<double>& gamma,
                                      const std::vector<double>& mu) {
  if (gamma.size() != mu.size() || gamma.empty()) {
    throw ArgumentError("gamma and mu need one entry per component");
  }
  std::vector<ThresholdRule> rules;
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    if (!(gamma[j] >= 0.0)) throw ArgumentError("gamma entries must be >= 0");
    if (!(mu[j] > 0.0)) throw ArgumentError("mu entries must be > 0");
    rules.push_back({penalty, gamma[j], mu[j]});
  }
  return rules;
}

// Modified Gram-Schmidt with one reorthogonalization pass. Returns false if a
// column is (numerically) dependent on its predecessors.
bool orthonormalize_into(Matrix& q, Eigen::Index j, Vector v) {
  const double original = v.norm();
  if (!(original > 0.0)) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
  }
  const double norm = v.norm();
  if (!(norm > 1e-10 * original)) return false;
  q.col(j) = v / norm;
  return true;
}

}  // namespace

StiefelPoint polar_projection(const Matrix& g) {
  const Eigen::Index p = g.rows();
  const Eigen::Index m = g.cols();
  if (m < 1 || m > p) throw ArgumentError("polar_projection needs a p x m matrix with 1 <= m <= p");
  if (m == 1) {
    const double norm = g.norm();
    if (!(norm > 0.0)) throw SolverError("ascent direction is zero (numerical rank 0)", -1, 0);
    return StiefelPoint(g / norm);
  }
  const Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double cutoff = s[0] * static_cast<double>(std::max(p, m)) * std::numeric_limits<double>::epsilon();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) ++rank;
  }
  if (!(s[0] > 0.0)) rank = 0;
  if (rank < m) {
    throw SolverError("ascent direction has numerical rank " + std::to_string(rank) + " < m = " +
                          std::to_string(m) + "; gamma too large or m too large",
                      -1, rank);
  }
  return StiefelPoint(svd.matrixU() * svd.matrixV().transpose());
}

BlockProblem::BlockProblem(const DataMatrix& a, Penalty penalty, std::vector<double> gamma,
                           std::vector<double> mu, KernelPlan plan)
    : a_(a), rules_(make_rules(penalty, gamma, mu)), plan_(plan) {}

Vector BlockProblem::correlations(const StiefelPoint& x, std::size_t j) const {
  return par_matvec_t(a_, column_span(x.values(), static_cast<Eigen::Index>(j)), plan_);
}

double BlockProblem::objective(const StiefelPoint& x) const {
  if (x.rows() != a_.rows() || x.cols() != rules_.size()) {
    throw ArgumentError("block objective: X must be p x m");
  }
  double f = 0.0;
  for (std::size_t j = 0; j < rules_.size(); ++j) {
    const Vector c = correlations(x, j);
    for (double ci : c) f += rules_[j].term(ci);
  }
  return f;
}

Matrix BlockProblem::ascent_direction(const StiefelPoint& x) const {
  if (x.rows() != a_.rows() || x.cols() != rules_.size()) {
    throw ArgumentError("block gradient: X must be p x m");
  }
  Matrix g(static_cast<Eigen::Index>(a_.rows()), static_cast<Eigen::Index>(rules_.size()));
  for (std::size_t j = 0; j < rules_.size(); ++j) {
    const Vector c = correlations(x, j);
    g.col(static_cast<Eigen::Index>(j)) =
        par_threshold_accumulate(a_, {c.data(), static_cast<std::size_t>(c.size())}, rules_[j], plan_);
  }
  return g;
}

SparseLoadings BlockProblem::recover(const StiefelPoint& x) const {
  Matrix z(static_cast<Eigen::Index>(a_.cols()), static_cast<Eigen::Index>(rules_.size()));
  for (std::size_t j = 0; j < rules_.size(); ++j) {
    const Vector c = correlations(x, j);
    for (Eigen::Index i = 0; i < c.size(); ++i) z(i, static_cast<Eigen::Index>(j)) = rules_[j].loading(c[i]);
  }
  return SparseLoadings::normalized(std::move(z));
}

double objective_bl1(const DataMatrix& a, const StiefelPoint& x, const std::vector<double>& gamma,
                     const std::vector<double>& mu, const KernelPlan& plan) {
  return BlockProblem(a, Penalty::L1, gamma, mu, plan).objective(x);
}

double objective_bl0(const DataMatrix& a, const StiefelPoint& x, const std::vector<double>& gamma,
                     const std::vector<double>& mu, const KernelPlan& plan) {
  return BlockProblem(a, Penalty::L0, gamma, mu, plan).objective(x);
}

Matrix ascent_direction_block(const DataMatrix& a, const StiefelPoint& x, const std::vector<double>& gamma,
                              const std::vector<double>& mu, Penalty penalty, const KernelPlan& plan) {
  return BlockProblem(a, penalty, gamma, mu, plan).ascent_direction(x);
}

StiefelPoint initial_stiefel_point(const DataMatrix& a, const SolverConfig& config) {
  const auto p = static_cast<Eigen::Index>(a.rows());
  const auto m = static_cast<Eigen::Index>(config.m);
  switch (config.init.value_or(InitStrategy::RandomOrthonormal)) {
    case InitStrategy::RandomOrthonormal: {
      std::mt19937_64 rng(config.seed);
      std::normal_distribution<double> gauss;
      Matrix g(p, m);
      for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = gauss(rng);
      const Eigen::HouseholderQR<Matrix> qr(g);
      return StiefelPoint(qr.householderQ() * Matrix::Identity(p, m));
    }
    case InitStrategy::MaxNormColumn: {
      const Vector norms = column_norms(a);
      std::vector<Eigen::Index> order(static_cast<std::size_t>(norms.size()));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return norms[l] > norms[r]; });
      Matrix q(p, m);
      Eigen::Index filled = 0;
      for (Eigen::Index idx : order) {
        if (filled == m) break;
        if (orthonormalize_into(q, filled, a.values().col(idx))) ++filled;
      }
      if (filled < m) {
        throw SolverError("max_norm_column init: data has fewer than m independent columns", 0,
                          static_cast<int>(filled));
      }
      return StiefelPoint(std::move(q));
    }
    case InitStrategy::UserSupplied: {
      const Matrix& x0 = *config.initial_point;
      if (x0.rows() != p || x0.cols() != m) throw ArgumentError("initial point must be p x m");
      return polar_projection(x0);
    }
  }
  throw ArgumentError("unknown init strategy");
}

SolveResult solve_block(const DataMatrix& a, const SolverConfig& config_in) {
  const SolverConfig config = config_in.validated();
  if (config.mode != Mode::Block) throw ArgumentError("solve_block needs mode = block");
  if (config.m > std::min(a.rows(), a.cols())) {
    throw ArgumentError("block mode needs m <= min(p, n) = " + std::to_string(std::min(a.rows(), a.cols())));
  }
  const auto started = std::chrono::steady_clock::now();
  const BlockProblem problem(a, config.penalty, config.gamma, config.mu, KernelPlan::from(config));

  RunReport report;
  BlockState state{initial_stiefel_point(a, config), 0.0, 0};
  state.objective = problem.objective(state.x);
  std::vector<double> history{state.objective};
  if (config.on_iterate) config.on_iterate(0, state.x.values(), state.objective);

  for (int it = 0; it < config.max_iter; ++it) {
    const Matrix g = problem.ascent_direction(state.x);
    std::optional<StiefelPoint> next_x;
    try {
      next_x.emplace(polar_projection(g));
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " at iteration " + std::to_string(it + 1), it + 1,
                        e.numerical_rank());
    }
    const double next = problem.objective(*next_x);
    if (next < state.objective) {
      // Rounding noise at the optimum; keep the better point.
      report.converged = true;
      break;
    }
    const double change = std::abs(next - state.objective) / std::max(state.objective, 1e-30);
    const double moved = (next_x->values() - state.x.values()).norm();
    state = BlockState{std::move(*next_x), next, state.iteration + 1};
    history.push_back(next);
    ++report.iterations;
    if (config.on_iterate) config.on_iterate(report.iterations, state.x.values(), next);
    if (change < config.tol && (config.step_tol == 0.0 || moved <= config.step_tol)) {
      report.converged = true;
      break;
    }
  }
  report.objective_history.push_back(std::move(history));

  SparseLoadings loadings = problem.recover(state.x);
  report.nnz_per_component = loadings.nnz_per_component();
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(loadings), state.x.values(), std::move(report)};
}

SolveResult solve(const DataMatrix& a, const SolverConfig& config) {
  return config.mode == Mode::Block ? solve_block(a, config) : solve_multi_sequential(a, config);
}

}  // namespace spca
