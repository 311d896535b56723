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

#include "spca/single_unit.hpp"

#include <chrono>
#include <random>

namespace spca {

namespace {

void require_unit(const Vector& x, std::size_t p, const char* who) {
  if (static_cast<std::size_t>(x.size()) != p) {
    throw ArgumentError(std::string(who) + ": x has length " + std::to_string(x.size()) +
                        ", expected " + std::to_string(p));
  }
  if (!(std::abs(x.norm() - 1.0) <= 1e-9)) {
    throw ArgumentError(std::string(who) + ": x is not a unit vector");
  }
}

std::span<const double> as_span(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace

SingleUnitProblem::SingleUnitProblem(const DataMatrix& a, Penalty penalty, double gamma, KernelPlan plan)
    : a_(a), rule_{penalty, gamma, 1.0}, plan_(plan) {
  if (!(gamma >= 0.0)) throw ArgumentError("gamma must be >= 0");
}

Vector SingleUnitProblem::correlations(const Vector& x) const {
  require_unit(x, a_.rows(), "single-unit");
  return par_matvec_t(a_, as_span(x), plan_);
}

double SingleUnitProblem::objective(const Vector& x) const {
  const Vector c = correlations(x);
  double f = 0.0;
  for (double ci : c) f += rule_.term(ci);
  return f;
}

Vector SingleUnitProblem::ascent_direction(const Vector& x) const {
  const Vector c = correlations(x);
  return par_threshold_accumulate(a_, as_span(c), rule_, plan_);
}

SparseLoadings SingleUnitProblem::recover(const Vector& x) const {
  const Vector c = correlations(x);
  Matrix z(c.size(), 1);
  for (Eigen::Index i = 0; i < c.size(); ++i) z(i, 0) = rule_.loading(c[i]);
  return SparseLoadings::normalized(std::move(z));
}

bool SingleUnitProblem::trivially_zero() const {
  // |a_i^T x| <= ||a_i|| on the sphere.
  const double max_norm = column_norms(a_).maxCoeff();
  const double bound = rule_.penalty == Penalty::L1 ? max_norm : max_norm * max_norm;
  return rule_.gamma >= bound;
}

double objective_sl1(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan) {
  return SingleUnitProblem(a, Penalty::L1, gamma, plan).objective(x);
}

double objective_sl0(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan) {
  return SingleUnitProblem(a, Penalty::L0, gamma, plan).objective(x);
}

Vector ascent_direction_sl1(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan) {
  return SingleUnitProblem(a, Penalty::L1, gamma, plan).ascent_direction(x);
}

Vector ascent_direction_sl0(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan) {
  return SingleUnitProblem(a, Penalty::L0, gamma, plan).ascent_direction(x);
}

SparseLoadings recover_pattern_sl1(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan) {
  return SingleUnitProblem(a, Penalty::L1, gamma, plan).recover(x);
}

SparseLoadings recover_pattern_sl0(const DataMatrix& a, const Vector& x, double gamma, const KernelPlan& plan) {
  return SingleUnitProblem(a, Penalty::L0, gamma, plan).recover(x);
}

StepOutcome power_step(const SingleUnitState& state, const Vector& direction) {
  if (direction.size() != state.x.size()) throw ArgumentError("power_step: dimension mismatch");
  const double norm = direction.norm();
  if (!(norm > 0.0)) return {state, true};
  return {SingleUnitState{direction / norm, state.objective, state.iteration + 1}, false};
}

Vector initial_sphere_point(const DataMatrix& a, const SolverConfig& config, std::size_t component) {
  const auto p = static_cast<Eigen::Index>(a.rows());
  switch (config.init.value_or(InitStrategy::MaxNormColumn)) {
    case InitStrategy::MaxNormColumn: {
      Eigen::Index best = 0;
      const Vector norms = column_norms(a);
      norms.maxCoeff(&best);
      if (norms[best] > 0.0) return a.values().col(best) / norms[best];
      return Vector::Unit(p, 0);
    }
    case InitStrategy::RandomOrthonormal: {
      std::mt19937_64 rng(config.seed + 0x9E3779B97F4A7C15ULL * (component + 1));
      std::normal_distribution<double> gauss;
      Vector x(p);
      for (auto& v : x) v = gauss(rng);
      return x / x.norm();
    }
    case InitStrategy::UserSupplied: {
      const Matrix& x0 = *config.initial_point;
      if (x0.rows() != p || static_cast<std::size_t>(x0.cols()) <= component) {
        throw ArgumentError("initial point must be p x m");
      }
      const Vector x = x0.col(static_cast<Eigen::Index>(component));
      const double norm = x.norm();
      if (!(norm > 0.0)) throw ArgumentError("initial point column is zero");
      return x / norm;
    }
  }
  throw ArgumentError("unknown init strategy");
}

SolveResult solve_single_unit(const DataMatrix& a, const SolverConfig& config_in) {
  const SolverConfig config = config_in.validated();
  if (config.mode != Mode::SingleUnit || config.m != 1) {
    throw ArgumentError("solve_single_unit needs mode = single_unit and m = 1");
  }
  const auto started = std::chrono::steady_clock::now();
  const SingleUnitProblem problem(a, config.penalty, config.gamma[0], KernelPlan::from(config));

  RunReport report;
  SingleUnitState state{initial_sphere_point(a, config), 0.0, 0};

  auto finish = [&](SparseLoadings z) {
    report.nnz_per_component = z.nnz_per_component();
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    Matrix x = state.x;
    return SolveResult{std::move(z), std::move(x), std::move(report)};
  };

  if (problem.trivially_zero()) {
    report.objective_history.push_back({0.0});
    report.converged = true;
    report.trivial_zero = true;
    return finish(SparseLoadings(Matrix::Zero(static_cast<Eigen::Index>(a.cols()), 1)));
  }

  state.objective = problem.objective(state.x);
  std::vector<double> history{state.objective};
  if (config.on_iterate) config.on_iterate(0, state.x, state.objective);
  for (int it = 0; it < config.max_iter; ++it) {
    const StepOutcome step = power_step(state, problem.ascent_direction(state.x));
    if (step.fixed_point) {
      report.converged = true;
      break;
    }
    const double next = problem.objective(step.state.x);
    if (next < state.objective) {
      // Ascent is guaranteed in exact arithmetic; a drop is rounding noise
      // at the optimum. Keep the better point.
      report.converged = true;
      break;
    }
    const double change = std::abs(next - state.objective) / std::max(state.objective, 1e-30);
    const double moved = (step.state.x - state.x).norm();
    state = step.state;
    state.objective = next;
    history.push_back(next);
    ++report.iterations;
    if (config.on_iterate) config.on_iterate(report.iterations, state.x, next);
    if (change < config.tol && (config.step_tol == 0.0 || moved <= config.step_tol)) {
      report.converged = true;
      break;
    }
  }
  report.objective_history.push_back(std::move(history));
  return finish(problem.recover(state.x));
}

DataMatrix deflate(const DataMatrix& a, const Vector& x) {
  require_unit(x, a.rows(), "deflate");
  const Eigen::RowVectorXd xt_a = x.transpose() * a.values();
  return DataMatrix(a.values() - x * xt_a);
}

SolveResult solve_multi_sequential(const DataMatrix& a, const SolverConfig& config_in) {
  const SolverConfig config = config_in.validated();
  if (config.mode != Mode::SingleUnit) throw ArgumentError("solve_multi_sequential needs mode = single_unit");
  const auto started = std::chrono::steady_clock::now();
  const auto n = static_cast<Eigen::Index>(a.cols());
  const auto m = static_cast<Eigen::Index>(config.m);

  Matrix z = Matrix::Zero(n, m);
  Matrix xs = Matrix::Zero(static_cast<Eigen::Index>(a.rows()), m);
  RunReport report;
  report.converged = true;

  DataMatrix current = a;
  bool exhausted = false;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (exhausted) {
      report.objective_history.push_back({0.0});
      continue;
    }
    SolverConfig one = config;
    one.m = 1;
    one.gamma = {config.gamma[static_cast<std::size_t>(j)]};
    one.mu = {1.0};
    if (config.initial_point) {
      one.initial_point = config.initial_point->col(j);
    }
    SolveResult r = solve_single_unit(current, one);
    z.col(j) = r.loadings.values().col(0);
    xs.col(j) = r.x.col(0);
    report.objective_history.push_back(std::move(r.report.objective_history.front()));
    report.iterations += r.report.iterations;
    report.converged = report.converged && r.report.converged;
    if (r.loadings.support(0).empty()) {
      // Deflation never increases |a_i^T x| over the sphere, so every later
      // component would be zero too.
      exhausted = true;
      continue;
    }
    if (j + 1 < m) current = deflate(current, r.x.col(0));
  }
  report.trivial_zero = exhausted && z.isZero(0.0);

  SparseLoadings loadings(std::move(z));
  report.nnz_per_component = loadings.nnz_per_component();
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return {std::move(loadings), std::move(xs), std::move(report)};
}

}  // namespace spca
